#pragma once

#include <cmath>

namespace squarepeg {

// value and first three derivatives of the scalar bump
//   c * exp(-(a/(s-lo)^2 + a/(hi-s)^2))   for s in (lo, hi), 0 outside
struct BumpJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

// Exponents above 700 underflow the value past 1e-300; returning an exact
// flat zero there keeps the derivative recurrences free of inf*0.
inline BumpJet bump_jet(double s, double lo, double hi, double c, double a) {
  BumpJet out;
  const double dl = s - lo;
  const double dr = hi - s;
  if (dl <= 0.0 || dr <= 0.0) return out;
  const double h = a / (dl * dl) + a / (dr * dr);
  if (!(h <= 700.0)) return out;
  const double e = std::exp(-h);
  const double v = c * e;
  const double dl3 = dl * dl * dl, dr3 = dr * dr * dr;
  const double h1 = -2.0 * a / dl3 + 2.0 * a / dr3;
  const double h2 = 6.0 * a / (dl3 * dl) + 6.0 * a / (dr3 * dr);
  const double h3 = -24.0 * a / (dl3 * dl * dl) + 24.0 * a / (dr3 * dr * dr);
  out.value = v;
  out.d1 = -h1 * v;
  out.d2 = (h1 * h1 - h2) * v;
  out.d3 = (-h1 * h1 * h1 + 3.0 * h1 * h2 - h3) * v;
  return out;
}

inline double bump_value(double s, double lo, double hi, double c, double a) {
  return bump_jet(s, lo, hi, c, a).value;
}

}  // namespace squarepeg
