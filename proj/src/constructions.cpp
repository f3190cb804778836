#include "squarepeg/constructions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "squarepeg/bump.hpp"

namespace squarepeg {

namespace {

constexpr int kScanGrid = 100000;
constexpr double kBisectionTol = 1e-6;
constexpr double kTangencyTol = 1e-9;
constexpr int kConvexSamples = 100000;

CircleArc three_quarter_circle(double start_angle) {
  CircleArc arc;
  arc.center = {0.0, 0.0};
  arc.radius = 1.0;
  arc.start_angle = start_angle;
  arc.end_angle = start_angle + 1.5 * kPi;
  return arc;
}

void validate_anchors(const std::vector<double>& anchors) {
  const double b = 0.25 * kPi;
  double prev = -b;
  for (double p : anchors) {
    if (!(p > -b && p < b))
      throw std::invalid_argument("anchors must lie strictly inside (-pi/4, pi/4)");
    if (!(p > prev))
      throw std::invalid_argument("anchors must be strictly increasing");
    prev = p;
  }
}

}  // namespace

CurveSpec build_nonsmooth_two_square() {
  CurveSpec spec;
  spec.name = "nonsmooth_two_square";
  spec.segments.push_back(three_quarter_circle(-0.25 * kPi));
  spec.segments.push_back(semicircle_arc());
  spec.metadata["kind"] = "nonsmooth2";
  Curve check(spec);  // joint and simplicity validation
  return spec;
}

CurveSpec build_smooth_two_square(double c, double a) {
  if (!(c >= 0.0)) throw std::invalid_argument("build_smooth_two_square: c must be >= 0");
  CurveSpec spec;
  spec.name = "smooth_two_square";
  spec.segments.push_back(three_quarter_circle(-0.25 * kPi));
  GraphBumpArc arc;
  arc.c = c;
  arc.a = a;
  spec.segments.push_back(arc);
  spec.metadata["kind"] = "smooth2";
  spec.metadata["c"] = c;
  spec.metadata["a"] = a;
  Curve check(spec);  // throws "non-simple curve" when the graph escapes
  return spec;
}

ConstructionParams default_n_square_params(int n, std::optional<double> c, double a) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  ConstructionParams params;
  const double lo = -0.25 * kPi;
  const double span = 0.5 * kPi;
  for (int i = 1; i < n; ++i)
    params.anchors.push_back(lo + span * i / n);
  params.c = c;
  params.a = a;
  return params;
}

CurveSpec build_n_square(const ConstructionParams& params) {
  validate_anchors(params.anchors);
  if (!(params.a > 0.0)) throw std::invalid_argument("sharpness a must be positive");
  const double amp =
      params.c ? *params.c : default_bump_amplitude(params.anchors, params.a);
  if (!(amp > 0.0)) throw std::invalid_argument("bump amplitude must be positive");

  std::vector<double> knots;
  knots.push_back(-0.25 * kPi);
  knots.insert(knots.end(), params.anchors.begin(), params.anchors.end());
  knots.push_back(0.25 * kPi);

  CurveSpec spec;
  spec.name = "n_square_" + std::to_string(params.anchors.size() + 1);
  spec.segments.push_back(three_quarter_circle(0.25 * kPi));
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    PolarBumpArc arc;
    arc.u = knots[i];
    arc.v = knots[i + 1];
    arc.c = amp;
    arc.a = params.a;
    spec.segments.push_back(arc);
  }
  spec.metadata["kind"] = "nsquare";
  spec.metadata["anchors"] = params.anchors;
  spec.metadata["c"] = amp;
  spec.metadata["a"] = params.a;
  Curve check(spec);
  return spec;
}

double locus(double x) {
  if (std::fabs(x) > kHalfSqrt2) throw std::domain_error("locus: |x| exceeds 1/sqrt2");
  return std::sqrt(1.0 - x * x) - 2.0 * std::fabs(x);
}

double graph_height(double x, double c, double a) {
  return -std::sqrt(1.0 - x * x) + bump_value(x, -kHalfSqrt2, kHalfSqrt2, c, a);
}

IntersectionScan graph_locus_intersections(double c, double a) {
  if (!(c > 0.0)) throw std::invalid_argument("graph_locus_intersections: c must be positive");
  const double w = kHalfSqrt2;
  auto g = [c, a, w](double x) {
    return graph_height(x, c, a) - (std::sqrt(1.0 - x * x) - 2.0 * x);
  };

  IntersectionScan scan;
  scan.min_abs_g = std::numeric_limits<double>::infinity();
  double min_x = 0.0;
  double px = w * 1.0 / (kScanGrid + 1);
  double pg = g(px);
  for (int i = 2; i <= kScanGrid; ++i) {
    const double x = w * static_cast<double>(i) / (kScanGrid + 1);
    const double gx = g(x);
    const double ag = std::fabs(gx);
    if (ag < scan.min_abs_g) {
      scan.min_abs_g = ag;
      min_x = x;
    }
    if ((pg < 0.0 && gx > 0.0) || (pg > 0.0 && gx < 0.0)) {
      double lo = px, hi = x, glo = pg;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((glo < 0.0) == (gm < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
        if (hi - lo < 1e-12) break;
      }
      scan.abscissas.push_back(0.5 * (lo + hi));
      ++scan.count;
    }
    px = x;
    pg = gx;
  }
  if (scan.count == 0 && scan.min_abs_g < kTangencyTol) {
    scan.tangency = true;
    scan.count = 1;
    scan.abscissas.push_back(min_x);
  }
  return scan;
}

CriticalSearchResult critical_c(double low, double high, double a) {
  if (!(low < high)) throw std::invalid_argument("invalid bracket");
  const int n_low = graph_locus_intersections(low, a).count;
  IntersectionScan hi_scan = graph_locus_intersections(high, a);
  if (n_low != 0 || hi_scan.count != 2) throw std::invalid_argument("invalid bracket");

  CriticalSearchResult res;
  double lo = low, hi = high;
  while (hi - lo >= kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    const IntersectionScan scan = graph_locus_intersections(mid, a);
    ++res.iterations;
    if (scan.count >= 1) {
      hi = mid;
      hi_scan = scan;
    } else {
      lo = mid;
    }
  }
  res.c_star = 0.5 * (lo + hi);
  res.bracket_low = lo;
  res.bracket_high = hi;
  double sum = 0.0;
  for (double x : hi_scan.abscissas) sum += x;
  res.tangency_x = hi_scan.abscissas.empty() ? 0.0 : sum / hi_scan.abscissas.size();
  return res;
}

double max_convex_c(double u, double v, double a) {
  if (!(u < v)) throw std::invalid_argument("max_convex_c: requires u < v");
  auto convex_at = [u, v, a](double c) {
    PolarBumpArc arc;
    arc.u = u;
    arc.v = v;
    arc.c = c;
    arc.a = a;
    const Segment seg = arc;
    for (int i = 0; i <= kConvexSamples; ++i) {
      const double s = static_cast<double>(i) / kConvexSamples;
      if (!(segment_signed_curvature(seg, s) > 0.0)) return false;
    }
    return true;
  };
  if (!convex_at(1e-9)) throw std::logic_error("max_convex_c: predicate false at c -> 0+");
  if (convex_at(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo >= kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (convex_at(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

double default_bump_amplitude(const std::vector<double>& anchors, double a) {
  validate_anchors(anchors);
  std::vector<double> knots;
  knots.push_back(-0.25 * kPi);
  knots.insert(knots.end(), anchors.begin(), anchors.end());
  knots.push_back(0.25 * kPi);
  double amp = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    amp = std::min(amp, 0.5 * max_convex_c(knots[i], knots[i + 1], a));
  return amp;
}

}  // namespace squarepeg
