#include "squarepeg/segment.hpp"

#include <cmath>
#include <stdexcept>

#include "squarepeg/bump.hpp"

namespace squarepeg {

CircleArc semicircle_arc() {
  CircleArc arc;
  arc.center = {0.0, -kHalfSqrt2};
  arc.radius = kHalfSqrt2;
  arc.start_angle = kPi;
  arc.end_angle = 0.0;
  return arc;
}

void validate_segment(const Segment& seg) {
  if (const auto* c = std::get_if<CircleArc>(&seg)) {
    if (!(c->radius > 0.0)) throw std::invalid_argument("CircleArc: radius must be positive");
    if (c->start_angle == c->end_angle)
      throw std::invalid_argument("CircleArc: empty angle span");
    if (!is_finite(c->center) || !std::isfinite(c->start_angle) || !std::isfinite(c->end_angle))
      throw std::invalid_argument("CircleArc: non-finite parameter");
  } else if (const auto* g = std::get_if<GraphBumpArc>(&seg)) {
    if (!(g->c >= 0.0)) throw std::invalid_argument("GraphBumpArc: c must be >= 0");
    if (!(g->a > 0.0)) throw std::invalid_argument("GraphBumpArc: a must be positive");
  } else {
    const auto& p = std::get<PolarBumpArc>(seg);
    if (!(p.u < p.v)) throw std::invalid_argument("PolarBumpArc: requires u < v");
    if (!(p.c >= 0.0)) throw std::invalid_argument("PolarBumpArc: c must be >= 0");
    if (!(p.a > 0.0)) throw std::invalid_argument("PolarBumpArc: a must be positive");
  }
}

const char* segment_kind(const Segment& seg) {
  if (std::holds_alternative<CircleArc>(seg)) return "CircleArc";
  if (std::holds_alternative<GraphBumpArc>(seg)) return "GraphBumpArc";
  return "PolarBumpArc";
}

namespace {

Jet2 circle_jet(const CircleArc& arc, double s) {
  const double span = arc.end_angle - arc.start_angle;
  const double th = arc.start_angle + s * span;
  const double c = std::cos(th), sn = std::sin(th);
  Jet2 j;
  j.p = {arc.center.x + arc.radius * c, arc.center.y + arc.radius * sn};
  j.d1 = {-arc.radius * span * sn, arc.radius * span * c};
  j.d2 = {-arc.radius * span * span * c, -arc.radius * span * span * sn};
  return j;
}

Jet2 graph_jet(const GraphBumpArc& arc, double s) {
  const double w = kHalfSqrt2;
  const double x = w * (2.0 * s - 1.0);
  const double dx = 2.0 * w;
  const double q = 1.0 - x * x;
  const double rq = std::sqrt(q);
  const BumpJet b = bump_jet(x, -w, w, arc.c, arc.a);
  const double y = -rq + b.value;
  const double y1 = x / rq + b.d1;
  const double y2 = 1.0 / (q * rq) + b.d2;
  Jet2 j;
  j.p = {x, y};
  j.d1 = {dx, y1 * dx};
  j.d2 = {0.0, y2 * dx * dx};
  return j;
}

Jet2 polar_jet(const PolarBumpArc& arc, double s) {
  const double span = arc.v - arc.u;
  const double th = arc.u + s * span;
  const BumpJet b = bump_jet(th, arc.u, arc.v, arc.c, arc.a);
  const double r = 1.0 + b.value;
  const double c = std::cos(th), sn = std::sin(th);
  const Vec2 er{c, sn}, et{-sn, c};
  Jet2 j;
  j.p = r * er;
  j.d1 = span * (b.d1 * er + r * et);
  j.d2 = (span * span) * ((b.d2 - r) * er + (2.0 * b.d1) * et);
  return j;
}

}  // namespace

Jet2 segment_jet(const Segment& seg, double s) {
  return std::visit(
      [s](const auto& arc) -> Jet2 {
        using T = std::decay_t<decltype(arc)>;
        if constexpr (std::is_same_v<T, CircleArc>) return circle_jet(arc, s);
        else if constexpr (std::is_same_v<T, GraphBumpArc>) return graph_jet(arc, s);
        else return polar_jet(arc, s);
      },
      seg);
}

Point segment_start(const Segment& seg) { return segment_jet(seg, 0.0).p; }
Point segment_end(const Segment& seg) { return segment_jet(seg, 1.0).p; }

double segment_signed_curvature(const Segment& seg, double s) {
  const Jet2 j = segment_jet(seg, s);
  const double speed2 = norm2(j.d1);
  if (speed2 < 1e-24) throw std::domain_error("degenerate parameterization");
  return cross(j.d1, j.d2) / (speed2 * std::sqrt(speed2));
}

}  // namespace squarepeg
