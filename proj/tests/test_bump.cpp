#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "squarepeg/bump.hpp"

using namespace squarepeg;

TEST_CASE("bump is identically zero outside the open window") {
  for (double s : {-1.0, 0.0, 1.0, 2.0}) {
    const BumpJet j = bump_jet(s, 0.0, 1.0, 0.7, 0.02);
    CHECK(j.value == 0.0);
    CHECK(j.d1 == 0.0);
    CHECK(j.d2 == 0.0);
    CHECK(j.d3 == 0.0);
  }
}

TEST_CASE("bump flushes to exact zero near the walls") {
  // a/dl^2 alone exceeds 700 once dl < sqrt(a/700); everything inside that
  // margin must be a hard zero, not a denormal.
  const double margin = std::sqrt(0.02 / 700.0);
  for (double d : {margin * 0.1, margin * 0.5, margin * 0.99}) {
    CHECK(bump_jet(d, 0.0, 1.0, 0.7, 0.02).value == 0.0);
    CHECK(bump_jet(1.0 - d, 0.0, 1.0, 0.7, 0.02).d3 == 0.0);
  }
  // just outside the margin the value is tiny but nonzero
  CHECK(bump_jet(margin * 1.41421357, 0.0, 1.0, 0.7, 0.02).value > 0.0);
}

TEST_CASE("bump jet matches independently computed reference") {
  const BumpJet j = bump_jet(0.3, 0.0, 1.0, 0.7, 0.02);
  CHECK(j.value == doctest::Approx(0.53809858468865638).epsilon(1e-14));
  CHECK(j.d1 == doctest::Approx(0.73443106688960335).epsilon(1e-14));
  CHECK(j.d2 == doctest::Approx(-7.2383700322474578).epsilon(1e-14));
  CHECK(j.d3 == doctest::Approx(72.379862200473632).epsilon(1e-14));
}

TEST_CASE("bump derivatives agree with finite differences") {
  const double lo = 0.0, hi = 1.0, c = 1.19, a = 0.02;
  const double h = 1e-5;
  for (double s : {0.2, 0.35, 0.5, 0.62, 0.8}) {
    const BumpJet jm2 = bump_jet(s - 2 * h, lo, hi, c, a);
    const BumpJet jm1 = bump_jet(s - h, lo, hi, c, a);
    const BumpJet j = bump_jet(s, lo, hi, c, a);
    const BumpJet jp1 = bump_jet(s + h, lo, hi, c, a);
    const BumpJet jp2 = bump_jet(s + 2 * h, lo, hi, c, a);
    const double fd1 =
        (jm2.value - 8 * jm1.value + 8 * jp1.value - jp2.value) / (12 * h);
    const double fd2 = (jm2.d1 - 8 * jm1.d1 + 8 * jp1.d1 - jp2.d1) / (12 * h);
    const double fd3 = (jm2.d2 - 8 * jm1.d2 + 8 * jp1.d2 - jp2.d2) / (12 * h);
    CHECK(j.d1 == doctest::Approx(fd1).epsilon(1e-8));
    CHECK(j.d2 == doctest::Approx(fd2).epsilon(1e-8));
    CHECK(j.d3 == doctest::Approx(fd3).epsilon(1e-7));
  }
}

TEST_CASE("bump is symmetric about the window midpoint") {
  // dyadic sample points keep hi - s exact in binary
  for (double s : {0.25, 0.375, 0.0625}) {
    const BumpJet l = bump_jet(s, 0.0, 1.0, 0.7, 0.02);
    const BumpJet r = bump_jet(1.0 - s, 0.0, 1.0, 0.7, 0.02);
    CHECK(l.value == r.value);
    CHECK(l.d1 == -r.d1);
    CHECK(l.d2 == r.d2);
  }
}

TEST_CASE("bump peaks at the midpoint with value c*exp(-8a)") {
  const double c = 0.7, a = 0.02;
  const BumpJet mid = bump_jet(0.5, 0.0, 1.0, c, a);
  CHECK(mid.value == doctest::Approx(c * std::exp(-8.0 * a)).epsilon(1e-15));
  CHECK(mid.d1 == doctest::Approx(0.0));
  CHECK(mid.value > bump_value(0.3, 0.0, 1.0, c, a));
  CHECK(bump_value(0.3, 0.0, 1.0, c, a) > bump_value(0.1, 0.0, 1.0, c, a));
}

TEST_CASE("bump_value matches the jet value") {
  CHECK(bump_value(0.42, 0.1, 0.9, 1.3, 0.05) ==
        bump_jet(0.42, 0.1, 0.9, 1.3, 0.05).value);
}
