#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "squarepeg/segment.hpp"

namespace squarepeg {

struct CurveSpec {
  std::string name;
  std::vector<Segment> segments;
  nlohmann::json metadata = nlohmann::json::object();
};

CurveSpec unit_circle_spec();

// cheap structural checks: non-empty, per-segment parameter validity,
// cyclic endpoint continuity within 1e-12
void validate_spec(const CurveSpec& spec);

// true when the closed polyline has no proper self-intersection
bool polyline_is_simple(const std::vector<Point>& pts);

// Closed curve with a global parameter t in [0,1). Each segment owns a
// parameter share proportional to its arclength (tabulated once at
// construction, 1024 subintervals per segment); within a segment t advances
// proportionally to arclength, so |d position/dt| equals the total length
// everywhere and first/second derivatives are continuous across smooth
// joints. Immutable after construction; all queries are const and
// thread-safe.
class Curve {
 public:
  // validates the spec, builds tables, and rejects self-intersecting
  // curves (throws std::invalid_argument "non-simple curve")
  explicit Curve(CurveSpec spec);

  const CurveSpec& spec() const { return spec_; }
  double length() const { return total_length_; }
  int segment_count() const { return static_cast<int>(spec_.segments.size()); }

  Point eval(double t) const;
  // derivatives with respect to t; at a corner joint these are the
  // right-sided values of the owning segment
  Jet2 jet(double t) const;
  Vec2 deriv(double t, int order) const;
  double signed_curvature(double t) const;

  struct Convexity {
    bool convex = false;
    double min_curvature = 0.0;
  };
  // samples >= 1000 required; corner-joint curves are rejected
  // (std::domain_error); sample points within 1e-9 of a joint are skipped
  Convexity is_convex(int samples = 100000) const;

  struct ClosestPoint {
    double t = 0.0;
    double distance = 0.0;
    bool refined = false;  // false when Newton fell back to the best sample
  };
  ClosestPoint closest_point(Point q) const;

  // joint k sits at parameter joint_param(k) between segments k-1 and k
  // (cyclically); joint 0 is the curve seam at t = 0
  int joint_count() const { return segment_count(); }
  double joint_param(int k) const { return t_cum_[k]; }
  bool joint_is_smooth(int k) const { return joint_smooth_[k]; }
  bool has_corners() const { return has_corners_; }
  // one-sided jets immediately before and after joint k
  void joint_jets(int k, Jet2* left, Jet2* right) const;

  // uniform position cache (4096 samples) used by the simplicity check and
  // closest-point scans
  const std::vector<Point>& sample_cache() const { return samples_; }

  struct Local {
    int segment = 0;
    double s = 0.0;
  };
  Local locate(double t) const;

 private:
  double arclength_partial(int seg, double s) const;
  double invert_arclength(int seg, double target) const;
  Jet2 jet_local(int seg, double s) const;

  CurveSpec spec_;
  std::vector<std::vector<double>> cum_;  // per segment, subinterval arclength prefix sums
  std::vector<double> seg_length_;
  std::vector<double> t_cum_;  // global share boundaries, size m+1, [0,...,1]
  double total_length_ = 0.0;
  std::vector<bool> joint_smooth_;
  bool has_corners_ = false;
  std::vector<Point> samples_;
};

}  // namespace squarepeg
