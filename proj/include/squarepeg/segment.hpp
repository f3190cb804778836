#pragma once

#include <string>
#include <variant>

#include "squarepeg/geometry.hpp"

namespace squarepeg {

// Arc of a circle, traversed from start_angle to end_angle. A decreasing
// angle span traverses clockwise; the inward semicircle of the non-smooth
// two-square curve needs this to keep the composite traversal continuous.
struct CircleArc {
  Point center;
  double radius = 1.0;
  double start_angle = 0.0;
  double end_angle = kTwoPi;
};

// y = -sqrt(1-x^2) + c*exp(-(a/(x+1/sqrt2)^2 + a/(x-1/sqrt2)^2)),
// x traversed from -1/sqrt2 to +1/sqrt2.
struct GraphBumpArc {
  double c = 0.0;
  double a = 0.02;
};

// r(theta) = 1 + c*exp(-(a/(theta-u)^2 + a/(v-theta)^2)), theta from u to v.
struct PolarBumpArc {
  double u = 0.0;
  double v = 1.0;
  double c = 0.0;
  double a = 0.02;
};

using Segment = std::variant<CircleArc, GraphBumpArc, PolarBumpArc>;

// the inward semicircle y = sqrt(1/2 - x^2) - 1/sqrt2 traversed from
// (-1/sqrt2,-1/sqrt2) to (+1/sqrt2,-1/sqrt2)
CircleArc semicircle_arc();

// throws std::invalid_argument on malformed parameters
void validate_segment(const Segment& seg);

const char* segment_kind(const Segment& seg);

// position and derivatives with respect to the native parameter s in [0,1]
Jet2 segment_jet(const Segment& seg, double s);

Point segment_start(const Segment& seg);
Point segment_end(const Segment& seg);

// kappa = cross(d1,d2)/|d1|^3 in the native parameter (invariant under
// orientation-preserving reparameterization)
double segment_signed_curvature(const Segment& seg, double s);

}  // namespace squarepeg
