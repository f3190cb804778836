#pragma once

#include <cmath>

namespace squarepeg {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
// 1/sqrt(2), the removed-arc half-width in both constructions
inline constexpr double kHalfSqrt2 = 0.70710678118654752440;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double xx, double yy) : x(xx), y(yy) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
};

using Point = Vec2;

inline Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

// counterclockwise quarter turn
inline Vec2 rot90(Vec2 v) { return {-v.y, v.x}; }

inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// position/velocity/acceleration bundle at one parameter value
struct Jet2 {
  Point p;
  Vec2 d1;
  Vec2 d2;
};

// maps any real to [0,1)
inline double wrap_unit(double t) {
  double r = t - std::floor(t);
  return (r >= 1.0) ? r - 1.0 : r;
}

// shortest distance between a and b on the unit-length circle of parameters
inline double wrap_dist(double a, double b) {
  double d = std::fabs(wrap_unit(a) - wrap_unit(b));
  return (d > 0.5) ? 1.0 - d : d;
}

// shortest distance between angles modulo `period`
inline double angle_dist(double a, double b, double period) {
  double d = std::fmod(std::fabs(a - b), period);
  return (d > 0.5 * period) ? period - d : d;
}

// point on the unit circle identified with an angle
inline Point circle_point(double angle) { return {std::cos(angle), std::sin(angle)}; }

// strict test: open segments (p1,p2) and (p3,p4) cross at an interior point
inline bool segments_properly_intersect(Point p1, Point p2, Point p3, Point p4) {
  auto orient = [](Point a, Point b, Point c) {
    return cross(b - a, c - a);
  };
  double o1 = orient(p1, p2, p3);
  double o2 = orient(p1, p2, p4);
  double o3 = orient(p3, p4, p1);
  double o4 = orient(p3, p4, p2);
  return ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) &&
         ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0));
}

}  // namespace squarepeg
