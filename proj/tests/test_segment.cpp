#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "squarepeg/segment.hpp"

using namespace squarepeg;

TEST_CASE("circle arc jets are exact") {
  CircleArc full;  // unit circle, 0..2pi
  for (double s : {0.0, 0.125, 0.3, 0.75}) {
    const Jet2 j = segment_jet(full, s);
    const double th = kTwoPi * s;
    CHECK(j.p.x == doctest::Approx(std::cos(th)).epsilon(1e-15));
    CHECK(j.p.y == doctest::Approx(std::sin(th)).epsilon(1e-15));
    CHECK(j.d1.x == doctest::Approx(-kTwoPi * std::sin(th)).epsilon(1e-15));
    CHECK(j.d1.y == doctest::Approx(kTwoPi * std::cos(th)).epsilon(1e-15));
    CHECK(norm(j.d2 + kTwoPi * kTwoPi * j.p) < 1e-12);
  }
  CHECK(segment_signed_curvature(full, 0.37) == doctest::Approx(1.0).epsilon(1e-14));

  CircleArc big{{1.0, -2.0}, 2.0, 0.3, 2.1};
  CHECK(segment_signed_curvature(big, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("semicircle arc runs clockwise through the origin") {
  const CircleArc sc = semicircle_arc();
  CHECK(sc.radius == doctest::Approx(kHalfSqrt2).epsilon(1e-16));
  CHECK(sc.center.x == 0.0);
  CHECK(sc.center.y == doctest::Approx(-kHalfSqrt2).epsilon(1e-16));
  CHECK(sc.start_angle == doctest::Approx(kPi));
  CHECK(sc.end_angle == doctest::Approx(0.0));

  const Point a = segment_start(sc);
  const Point b = segment_end(sc);
  CHECK(a.x == doctest::Approx(-kHalfSqrt2).epsilon(1e-15));
  CHECK(a.y == doctest::Approx(-kHalfSqrt2).epsilon(1e-15));
  CHECK(b.x == doctest::Approx(kHalfSqrt2).epsilon(1e-15));
  CHECK(b.y == doctest::Approx(-kHalfSqrt2).epsilon(1e-15));

  // bulges inward: midpoint is the origin, moving in +x
  const Jet2 mid = segment_jet(sc, 0.5);
  CHECK(std::fabs(mid.p.x) < 1e-15);
  CHECK(std::fabs(mid.p.y) < 1e-15);
  CHECK(mid.d1.x > 0.0);
  CHECK(std::fabs(mid.d1.y) < 1e-15);

  // clockwise traversal makes the signed curvature -1/r
  CHECK(segment_signed_curvature(sc, 0.5) ==
        doctest::Approx(-std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("graph bump arc matches reference values") {
  const GraphBumpArc g{1.18264, 0.02};
  // s = 0.5 maps to x = 0
  const Jet2 apex = segment_jet(g, 0.5);
  CHECK(apex.p.x == doctest::Approx(0.0));
  CHECK(apex.p.y == doctest::Approx(0.091714315890690942).epsilon(1e-13));

  const double x = 0.25;
  const double s = 0.5 * (x / kHalfSqrt2 + 1.0);
  const Jet2 j = segment_jet(g, s);
  CHECK(j.p.x == doctest::Approx(x).epsilon(1e-15));
  CHECK(j.p.y == doctest::Approx(0.08323364997882006).epsilon(1e-12));
  CHECK(segment_signed_curvature(g, s) ==
        doctest::Approx(-1.7450280959129053).epsilon(1e-10));

  // endpoints sit on the unit circle where the bump has decayed to zero
  const Point e0 = segment_start(g);
  const Point e1 = segment_end(g);
  CHECK(e0.x == doctest::Approx(-kHalfSqrt2).epsilon(1e-15));
  CHECK(e0.y == doctest::Approx(-kHalfSqrt2).epsilon(1e-15));
  CHECK(e1.x == doctest::Approx(kHalfSqrt2).epsilon(1e-15));
  CHECK(e1.y == doctest::Approx(-kHalfSqrt2).epsilon(1e-15));
}

TEST_CASE("graph arc with zero amplitude is the lower unit-circle graph") {
  const GraphBumpArc flat{0.0, 0.02};
  for (double s : {0.1, 0.4, 0.77}) {
    const Jet2 j = segment_jet(flat, s);
    CHECK(norm(j.p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j.p.y < 0.0);
  }
}

TEST_CASE("polar bump arc matches reference values") {
  const PolarBumpArc p{0.0, kPi / 4.0, 0.05, 0.02};
  // s = 0.5 maps to theta = pi/8
  const Jet2 j = segment_jet(p, 0.5);
  const double r = norm(j.p);
  CHECK(r == doctest::Approx(1.038576403270402).epsilon(1e-13));
  CHECK(std::atan2(j.p.y, j.p.x) == doctest::Approx(kPi / 8.0).epsilon(1e-13));
  CHECK(segment_signed_curvature(p, 0.5) ==
        doctest::Approx(1.3237810990915197).epsilon(1e-10));

  // walls are flat: endpoints exactly on the unit circle
  CHECK(norm(segment_start(p)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm(segment_end(p)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("polar arc derivatives agree with finite differences") {
  const PolarBumpArc p{-0.3, 0.9, 0.01, 0.02};
  const double h = 1e-5;
  for (double s : {0.3, 0.5, 0.71}) {
    Jet2 m2 = segment_jet(p, s - 2 * h), m1 = segment_jet(p, s - h);
    Jet2 p1 = segment_jet(p, s + h), p2 = segment_jet(p, s + 2 * h);
    Jet2 j = segment_jet(p, s);
    Vec2 fd1 = (m2.p - 8.0 * m1.p + 8.0 * p1.p - p2.p) / (12 * h);
    Vec2 fd2 = (m2.d1 - 8.0 * m1.d1 + 8.0 * p1.d1 - p2.d1) / (12 * h);
    CHECK(norm(j.d1 - fd1) / norm(j.d1) < 1e-9);
    CHECK(norm(j.d2 - fd2) / norm(j.d2) < 1e-8);
  }
}

TEST_CASE("graph arc derivatives agree with finite differences") {
  const GraphBumpArc g{1.19, 0.02};
  const double h = 1e-5;
  for (double s : {0.35, 0.5, 0.64}) {
    Jet2 m2 = segment_jet(g, s - 2 * h), m1 = segment_jet(g, s - h);
    Jet2 p1 = segment_jet(g, s + h), p2 = segment_jet(g, s + 2 * h);
    Jet2 j = segment_jet(g, s);
    Vec2 fd1 = (m2.p - 8.0 * m1.p + 8.0 * p1.p - p2.p) / (12 * h);
    Vec2 fd2 = (m2.d1 - 8.0 * m1.d1 + 8.0 * p1.d1 - p2.d1) / (12 * h);
    CHECK(norm(j.d1 - fd1) / norm(j.d1) < 1e-9);
    CHECK(norm(j.d2 - fd2) / norm(j.d2) < 1e-8);
  }
}

TEST_CASE("segment validation rejects malformed parameters") {
  CHECK_THROWS_AS(validate_segment(CircleArc{{0, 0}, 0.0, 0.0, kTwoPi}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_segment(CircleArc{{0, 0}, -1.0, 0.0, kTwoPi}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_segment(CircleArc{{0, 0}, 1.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_segment(GraphBumpArc{-0.1, 0.02}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_segment(GraphBumpArc{0.5, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_segment(PolarBumpArc{1.0, 1.0, 0.1, 0.02}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_segment(PolarBumpArc{0.5, 0.2, 0.1, 0.02}),
                  std::invalid_argument);
  CHECK_NOTHROW(validate_segment(semicircle_arc()));
  CHECK_NOTHROW(validate_segment(GraphBumpArc{1.19, 0.02}));
}

TEST_CASE("segment kinds report their names") {
  CHECK(std::string(segment_kind(CircleArc{})) == "CircleArc");
  CHECK(std::string(segment_kind(GraphBumpArc{})) == "GraphBumpArc");
  CHECK(std::string(segment_kind(PolarBumpArc{})) == "PolarBumpArc");
}
