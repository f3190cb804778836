#include "squarepeg/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace squarepeg {

namespace {

constexpr int kArclenSubdiv = 1024;
constexpr int kSimplicitySamples = 4096;
constexpr double kJointTol = 1e-12;
constexpr double kSmoothJointTol = 1e-8;

// 5-point Gauss-Legendre on [0,1]
constexpr double kGlNode[5] = {0.046910077030668004, 0.230765344947158450,
                               0.5, 0.769234655052841550, 0.953089922969331996};
constexpr double kGlWeight[5] = {0.118463442528094544, 0.239314335249683234,
                                 0.284444444444444444, 0.239314335249683234,
                                 0.118463442528094544};

}  // namespace

CurveSpec unit_circle_spec() {
  CurveSpec spec;
  spec.name = "unit_circle";
  CircleArc arc;
  arc.center = {0.0, 0.0};
  arc.radius = 1.0;
  arc.start_angle = 0.0;
  arc.end_angle = kTwoPi;
  spec.segments.push_back(arc);
  spec.metadata["kind"] = "unit_circle";
  return spec;
}

void validate_spec(const CurveSpec& spec) {
  if (spec.segments.empty()) throw std::invalid_argument("CurveSpec: empty segment list");
  for (const Segment& seg : spec.segments) validate_segment(seg);
  const int m = static_cast<int>(spec.segments.size());
  for (int k = 0; k < m; ++k) {
    const Point e = segment_end(spec.segments[k]);
    const Point s = segment_start(spec.segments[(k + 1) % m]);
    if (dist(e, s) > kJointTol)
      throw std::invalid_argument("CurveSpec: segment endpoints do not meet (joint tolerance 1e-12)");
  }
}

bool polyline_is_simple(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    const Point a1 = pts[i];
    const Point a2 = pts[(i + 1) % n];
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // wrap-adjacent
      if (segments_properly_intersect(a1, a2, pts[j], pts[(j + 1) % n])) return false;
    }
  }
  return true;
}

Curve::Curve(CurveSpec spec) : spec_(std::move(spec)) {
  validate_spec(spec_);
  const int m = segment_count();

  cum_.resize(m);
  seg_length_.resize(m);
  for (int k = 0; k < m; ++k) {
    auto& cum = cum_[k];
    cum.assign(kArclenSubdiv + 1, 0.0);
    const double hs = 1.0 / kArclenSubdiv;
    for (int i = 0; i < kArclenSubdiv; ++i) {
      double piece = 0.0;
      for (int g = 0; g < 5; ++g) {
        const double s = (i + kGlNode[g]) * hs;
        piece += kGlWeight[g] * norm(segment_jet(spec_.segments[k], s).d1);
      }
      cum[i + 1] = cum[i] + piece * hs;
    }
    seg_length_[k] = cum.back();
    if (!(seg_length_[k] > 0.0) || !std::isfinite(seg_length_[k]))
      throw std::invalid_argument("CurveSpec: segment with non-positive arclength");
  }

  total_length_ = 0.0;
  t_cum_.assign(m + 1, 0.0);
  for (int k = 0; k < m; ++k) total_length_ += seg_length_[k];
  double acc = 0.0;
  for (int k = 0; k < m; ++k) {
    t_cum_[k] = acc / total_length_;
    acc += seg_length_[k];
  }
  t_cum_[m] = 1.0;
  t_cum_[0] = 0.0;

  joint_smooth_.assign(m, false);
  for (int k = 0; k < m; ++k) {
    const int prev = (k + m - 1) % m;
    const Vec2 tl = segment_jet(spec_.segments[prev], 1.0).d1;
    const Vec2 tr = segment_jet(spec_.segments[k], 0.0).d1;
    const Vec2 ul = tl / norm(tl), ur = tr / norm(tr);
    joint_smooth_[k] = dist(ul, ur) < kSmoothJointTol;
    if (!joint_smooth_[k]) has_corners_ = true;
  }

  samples_.resize(kSimplicitySamples);
  for (int i = 0; i < kSimplicitySamples; ++i)
    samples_[i] = eval(static_cast<double>(i) / kSimplicitySamples);
  if (!polyline_is_simple(samples_)) throw std::invalid_argument("non-simple curve");
}

double Curve::arclength_partial(int seg, double s) const {
  const auto& cum = cum_[seg];
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return seg_length_[seg];
  const double scaled = s * kArclenSubdiv;
  int i = static_cast<int>(scaled);
  if (i >= kArclenSubdiv) i = kArclenSubdiv - 1;
  const double lo = static_cast<double>(i) / kArclenSubdiv;
  const double width = s - lo;
  double piece = 0.0;
  for (int g = 0; g < 5; ++g) {
    const double ss = lo + kGlNode[g] * width;
    piece += kGlWeight[g] * norm(segment_jet(spec_.segments[seg], ss).d1);
  }
  return cum[i] + piece * width;
}

double Curve::invert_arclength(int seg, double target) const {
  const auto& cum = cum_[seg];
  if (target <= 0.0) return 0.0;
  if (target >= seg_length_[seg]) return 1.0;
  const auto it = std::upper_bound(cum.begin(), cum.end(), target);
  int i = static_cast<int>(it - cum.begin()) - 1;
  if (i < 0) i = 0;
  if (i >= kArclenSubdiv) i = kArclenSubdiv - 1;
  double s = (i + (target - cum[i]) / (cum[i + 1] - cum[i])) / kArclenSubdiv;
  for (int iter = 0; iter < 4; ++iter) {
    const double f = arclength_partial(seg, s) - target;
    const double speed = norm(segment_jet(spec_.segments[seg], s).d1);
    const double step = f / speed;
    s -= step;
    if (s < 0.0) s = 0.0;
    if (s > 1.0) s = 1.0;
    if (std::fabs(step) < 1e-15) break;
  }
  return s;
}

Curve::Local Curve::locate(double t) const {
  const double tw = wrap_unit(t);
  const auto it = std::upper_bound(t_cum_.begin(), t_cum_.end(), tw);
  int k = static_cast<int>(it - t_cum_.begin()) - 1;
  const int m = segment_count();
  if (k < 0) k = 0;
  if (k >= m) k = m - 1;
  const double share = t_cum_[k + 1] - t_cum_[k];
  const double u = (tw - t_cum_[k]) / share;
  Local loc;
  loc.segment = k;
  loc.s = invert_arclength(k, u * seg_length_[k]);
  return loc;
}

Jet2 Curve::jet_local(int seg, double s) const {
  const Jet2 j = segment_jet(spec_.segments[seg], s);
  const double speed = norm(j.d1);
  const double f = total_length_ / speed;
  const double lam2 = dot(j.d1, j.d2) / speed;  // d speed / d s
  Jet2 out;
  out.p = j.p;
  out.d1 = f * j.d1;
  out.d2 = (f * f) * (j.d2 - (lam2 / speed) * j.d1);
  return out;
}

Point Curve::eval(double t) const {
  const Local loc = locate(t);
  return segment_jet(spec_.segments[loc.segment], loc.s).p;
}

Jet2 Curve::jet(double t) const {
  const Local loc = locate(t);
  return jet_local(loc.segment, loc.s);
}

Vec2 Curve::deriv(double t, int order) const {
  if (order != 1 && order != 2) throw std::invalid_argument("deriv: order must be 1 or 2");
  const Jet2 j = jet(t);
  return order == 1 ? j.d1 : j.d2;
}

double Curve::signed_curvature(double t) const {
  const Jet2 j = jet(t);
  const double speed2 = norm2(j.d1);
  if (speed2 < 1e-24) throw std::domain_error("degenerate parameterization");
  return cross(j.d1, j.d2) / (speed2 * std::sqrt(speed2));
}

Curve::Convexity Curve::is_convex(int samples) const {
  if (samples < 1000) throw std::invalid_argument("is_convex: samples must be >= 1000");
  if (has_corners_) throw std::domain_error("is_convex: curve has corner joints");
  Convexity res;
  res.min_curvature = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    bool near_joint = false;
    for (int k = 0; k < segment_count(); ++k) {
      if (wrap_dist(t, t_cum_[k]) < 1e-9) { near_joint = true; break; }
    }
    if (near_joint) continue;
    res.min_curvature = std::min(res.min_curvature, signed_curvature(t));
  }
  res.convex = res.min_curvature > 0.0;
  return res;
}

Curve::ClosestPoint Curve::closest_point(Point q) const {
  const int n = static_cast<int>(samples_.size());
  int best = 0;
  double best_d2 = norm2(samples_[0] - q);
  for (int i = 1; i < n; ++i) {
    const double d2 = norm2(samples_[i] - q);
    if (d2 < best_d2) { best_d2 = d2; best = i; }
  }
  ClosestPoint res;
  res.t = static_cast<double>(best) / n;
  res.distance = std::sqrt(best_d2);

  // Newton on g(t) = (p(t)-q) . p'(t)
  double t = res.t;
  bool ok = false;
  for (int iter = 0; iter < 30; ++iter) {
    const Jet2 j = jet(t);
    const Vec2 r = j.p - q;
    const double g = dot(r, j.d1);
    const double gp = norm2(j.d1) + dot(r, j.d2);
    if (std::fabs(gp) < 1e-300) break;
    const double step = g / gp;
    t = wrap_unit(t - step);
    if (std::fabs(step) < 1e-15) { ok = true; break; }
  }
  if (ok) {
    const double d = dist(eval(t), q);
    // keep the refinement only if it did not escape to a worse minimum
    if (d <= res.distance + 1e-12) {
      res.t = t;
      res.distance = d;
      res.refined = true;
    }
  }
  return res;
}

void Curve::joint_jets(int k, Jet2* left, Jet2* right) const {
  const int m = segment_count();
  const int prev = (k + m - 1) % m;
  if (left) *left = jet_local(prev, 1.0);
  if (right) *right = jet_local(k, 0.0);
}

}  // namespace squarepeg
