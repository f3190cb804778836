#include "squarepeg/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "squarepeg/constructions.hpp"

namespace squarepeg {

namespace {

constexpr double kWorld = 1.6;  // half-width of the rendered window

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

struct Mapper {
  double size;
  double px(double x) const { return (x + kWorld) / (2.0 * kWorld) * size; }
  double py(double y) const { return (kWorld - y) / (2.0 * kWorld) * size; }
  std::string pair(Point p) const { return fmt(px(p.x)) + "," + fmt(py(p.y)); }
};

const char* square_color(size_t index) {
  static const char* palette[] = {"#d62728", "#9467bd", "#ff7f0e",
                                  "#17becf", "#e377c2", "#8c564b"};
  return palette[index % 6];
}

}  // namespace

std::string render_svg(const Curve& curve, const std::vector<Square>& squares,
                       const RenderOptions& options) {
  const Mapper map{static_cast<double>(options.size)};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size
      << "\" height=\"" << options.size << "\" viewBox=\"0 0 " << options.size << " "
      << options.size << "\">\n";
  out << "<rect width=\"" << options.size << "\" height=\"" << options.size
      << "\" fill=\"#ffffff\"/>\n";

  if (options.ghost_circle) {
    out << "<circle cx=\"" << fmt(map.px(0.0)) << "\" cy=\"" << fmt(map.py(0.0))
        << "\" r=\"" << fmt(options.size / (2.0 * kWorld))
        << "\" fill=\"none\" stroke=\"#c8c8c8\" stroke-width=\"1\" "
           "stroke-dasharray=\"6,5\"/>\n";
  }

  if (options.locus_overlay) {
    // base height of the axis-aligned square whose top chord sits on the
    // unit circle: y = sqrt(1 - x^2) - 2|x|
    out << "<polyline fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.2\" points=\"";
    const int n = 256;
    for (int i = 0; i <= n; ++i) {
      const double x = kHalfSqrt2 * i / (n + 1);
      out << map.pair({x, locus(x)});
      if (i < n) out << ' ';
    }
    out << "\"/>\n";
    if (options.locus_c > 0.0) {
      out << "<polyline fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.2\" "
             "stroke-dasharray=\"4,3\" points=\"";
      for (int i = 0; i <= n; ++i) {
        const double x = -kHalfSqrt2 + 2.0 * kHalfSqrt2 * i / n;
        out << map.pair({x, graph_height(x, options.locus_c, options.locus_a)});
        if (i < n) out << ' ';
      }
      out << "\"/>\n";
    }
  }

  out << "<path fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" d=\"";
  const int m = options.curve_samples;
  for (int i = 0; i < m; ++i) {
    const Point p = curve.eval(static_cast<double>(i) / m);
    out << (i == 0 ? 'M' : 'L') << map.pair(p);
  }
  out << "Z\"/>\n";

  for (size_t s = 0; s < squares.size(); ++s) {
    out << "<polygon fill=\"none\" stroke=\"" << square_color(s)
        << "\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i < 4; ++i) {
      out << map.pair(squares[s].vertices[i]);
      if (i < 3) out << ' ';
    }
    out << "\"/>\n";
    for (int i = 0; i < 4; ++i) {
      out << "<circle cx=\"" << fmt(map.px(squares[s].vertices[i].x)) << "\" cy=\""
          << fmt(map.py(squares[s].vertices[i].y)) << "\" r=\"3\" fill=\""
          << square_color(s) << "\"/>\n";
    }
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace squarepeg
