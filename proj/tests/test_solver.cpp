#include <doctest.h>

#include <algorithm>
#include <initializer_list>
#include <cmath>
#include <stdexcept>

#include "squarepeg/constructions.hpp"
#include "squarepeg/solver.hpp"

using namespace squarepeg;

namespace {

const Curve& circle_curve() {
  static const Curve c(unit_circle_spec());
  return c;
}

const Curve& corner_curve() {
  static const Curve c(build_nonsmooth_two_square());
  return c;
}

double residual_norm4(const std::array<double, 4>& r) {
  return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3]);
}

}  // namespace

TEST_CASE("square residual vanishes exactly on an inscribed square") {
  const std::array<double, 4> t{0.0, 0.25, 0.5, 0.75};
  const auto r = square_residual(circle_curve(), t);
  CHECK(residual_norm4(r) < 1e-12);

  const std::array<double, 4> off{0.0, 0.2, 0.5, 0.75};
  CHECK(residual_norm4(square_residual(circle_curve(), off)) > 1e-2);
}

TEST_CASE("residual jacobian agrees with finite differences") {
  const Curve& c = circle_curve();
  const std::array<double, 4> t{0.03, 0.21, 0.55, 0.81};
  const Jacobian jac = residual_jacobian(c, t);
  CHECK_FALSE(jac.one_sided);
  const double h = 1e-6;
  for (int col = 0; col < 4; ++col) {
    for (int row = 0; row < 4; ++row) {
      auto tm2 = t, tm1 = t, tp1 = t, tp2 = t;
      tm2[col] -= 2 * h;
      tm1[col] -= h;
      tp1[col] += h;
      tp2[col] += 2 * h;
      const double fd = (square_residual(c, tm2)[row] - 8 * square_residual(c, tm1)[row] +
                         8 * square_residual(c, tp1)[row] - square_residual(c, tp2)[row]) /
                        (12 * h);
      CHECK(jac.m[row][col] == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("jacobian flags corner-straddling parameter sets") {
  const Curve& c = corner_curve();
  const std::array<double, 4> at_corner{c.joint_param(1), 0.3, 0.6, 0.9};
  CHECK(residual_jacobian(c, at_corner).one_sided);
}

TEST_CASE("newton converges from a perturbed seed") {
  const Curve& c = circle_curve();
  SolveConfig config;
  const std::array<double, 4> seed{0.01, 0.26, 0.49, 0.76};
  const NewtonResult res = newton_refine(c, seed, config);
  REQUIRE(res.status == NewtonStatus::kConverged);
  CHECK(res.residual_norm < 1e-12);
  CHECK(res.iterations <= 20);
  // params come back canonically rotated: smallest first, cyclic order kept
  CHECK(res.params[0] <= res.params[1]);
  CHECK(res.params[0] <= res.params[2]);
  CHECK(res.params[0] <= res.params[3]);
}

TEST_CASE("make_square is invariant under the eight relabelings") {
  // canonicalization is purely combinatorial, no squareness needed
  const Curve& c = corner_curve();
  const std::array<double, 4> p{0.12, 0.35, 0.58, 0.86};
  const Square sq = make_square(c, p);
  const std::array<std::array<double, 4>, 7> relabelings{{
      {p[1], p[2], p[3], p[0]},
      {p[2], p[3], p[0], p[1]},
      {p[3], p[0], p[1], p[2]},
      {p[3], p[2], p[1], p[0]},
      {p[2], p[1], p[0], p[3]},
      {p[1], p[0], p[3], p[2]},
      {p[0], p[3], p[2], p[1]},
  }};
  for (const auto& perm : relabelings) {
    const Square other = make_square(c, perm);
    for (int i = 0; i < 4; ++i) {
      CHECK(other.params[i] == doctest::Approx(sq.params[i]).epsilon(1e-15));
    }
    CHECK(canonical_key(other, 1e-6) == canonical_key(sq, 1e-6));
  }
  CHECK(dist(sq.center, 0.25 * (sq.vertices[0] + sq.vertices[1] +
                                sq.vertices[2] + sq.vertices[3])) < 1e-15);
}

TEST_CASE("verify_square accepts solver output and rejects tampering") {
  const Curve& c = corner_curve();
  SolveConfig config;
  const SolveReport report = enumerate_squares(c, config);
  REQUIRE_FALSE(report.squares.empty());
  for (const Square& sq : report.squares) {
    std::string why;
    CHECK(verify_square(c, sq, config, &why));
    CHECK(why.empty());
  }

  Square bad = report.squares.front();
  bad.vertices[2].x += 1e-3;
  std::string why;
  CHECK_FALSE(verify_square(c, bad, config, &why));
  CHECK(why == "vertex off curve");

  Square off = report.squares.front();
  for (int i = 0; i < 4; ++i) off.vertices[i] = c.eval(0.01 + 0.22 * i);
  CHECK_FALSE(verify_square(c, off, config, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("corner construction carries exactly two squares") {
  const Curve& c = corner_curve();
  const SolveReport report = enumerate_squares(c, SolveConfig{});
  REQUIRE(report.squares.size() == 2);
  CHECK_FALSE(report.family_suspected);
  CHECK(report.stats.converged > 0);
  CHECK(report.stats.seeds_tried >= report.stats.converged);
  CHECK(report.stats.filtered_off_curve == 0);

  std::vector<Square> sq = report.squares;
  std::sort(sq.begin(), sq.end(), [](const Square& a, const Square& b) {
    return a.side_length < b.side_length;
  });

  // small square: base on the semicircle, top corners on the big arc
  const double x0 = 0.54849831942816441;
  const double ytop = 0.83615165704821714;
  CHECK(sq[0].side_length == doctest::Approx(2.0 * x0).epsilon(1e-9));
  CHECK(std::fabs(sq[0].center.x) < 1e-9);
  CHECK(sq[0].center.y == doctest::Approx(ytop - x0).epsilon(1e-9));

  // big square: the inscribed square of the full circle with axis-aligned
  // sides, vertices at (+-1/sqrt2, +-1/sqrt2)
  CHECK(sq[1].side_length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(std::fabs(sq[1].center.x) < 1e-10);
  CHECK(std::fabs(sq[1].center.y) < 1e-10);
  for (const Point& v : sq[1].vertices) {
    CHECK(std::fabs(std::fabs(v.x) - kHalfSqrt2) < 1e-9);
    CHECK(std::fabs(std::fabs(v.y) - kHalfSqrt2) < 1e-9);
  }
}

TEST_CASE("circle is reported as a family with one representative") {
  const SolveReport report = enumerate_squares(circle_curve(), SolveConfig{});
  CHECK(report.family_suspected);
  REQUIRE(report.squares.size() == 1);
  const Square& rep = report.squares.front();
  CHECK(rep.side_length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  // the representative is seam-anchored
  CHECK(rep.params[0] == doctest::Approx(0.0));
  CHECK(rep.params[1] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(rep.params[2] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rep.params[3] == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("enumeration is deterministic across thread counts") {
  SolveConfig one;
  one.threads = 1;
  SolveConfig many;
  many.threads = 8;
  const SolveReport a = enumerate_squares(corner_curve(), one);
  const SolveReport b = enumerate_squares(corner_curve(), many);
  REQUIRE(a.squares.size() == b.squares.size());
  for (std::size_t i = 0; i < a.squares.size(); ++i) {
    for (int k = 0; k < 4; ++k) {
      CHECK(a.squares[i].params[k] == b.squares[i].params[k]);
    }
  }
  CHECK(a.family_suspected == b.family_suspected);
}

TEST_CASE("min_side_length filters the small square out") {
  SolveConfig config;
  config.min_side_length = 1.2;
  const SolveReport report = enumerate_squares(corner_curve(), config);
  REQUIRE(report.squares.size() == 1);
  CHECK(report.squares.front().side_length > 1.2);
}

TEST_CASE("oracle method agrees with the primary enumeration") {
  const SolveReport primary = enumerate_squares(corner_curve(), SolveConfig{});
  const std::vector<Square> oracle = oracle_enumerate(corner_curve(), 512);
  double worst = 0.0;
  CHECK(square_sets_match(primary.squares, oracle, 1e-6, &worst));
  CHECK(worst < 1e-8);
}

TEST_CASE("oracle rejects too-coarse resolutions") {
  CHECK_THROWS_AS(oracle_enumerate(circle_curve(), 128), std::invalid_argument);
}

TEST_CASE("square set matching is a real test, not a tautology") {
  const SolveReport report = enumerate_squares(corner_curve(), SolveConfig{});
  REQUIRE(report.squares.size() == 2);
  std::vector<Square> partial{report.squares.front()};
  CHECK_FALSE(square_sets_match(report.squares, partial, 1e-6));

  std::vector<Square> shifted = report.squares;
  for (auto& v : shifted.front().vertices) v.x += 1e-3;
  CHECK_FALSE(square_sets_match(report.squares, shifted, 1e-6));
  CHECK(square_sets_match(report.squares, shifted, 1e-2));
}

TEST_CASE("hausdorff distance between vertex sets") {
  const SolveReport report = enumerate_squares(corner_curve(), SolveConfig{});
  const Square& sq = report.squares.front();
  CHECK(vertex_set_hausdorff(sq, sq) == 0.0);
  Square moved = sq;
  for (auto& v : moved.vertices) v.y += 0.125;
  CHECK(vertex_set_hausdorff(sq, moved) == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("solve config is validated") {
  SolveConfig bad;
  bad.grid_resolution = 4;
  CHECK_THROWS_AS(enumerate_squares(circle_curve(), bad), std::invalid_argument);

  SolveConfig neg;
  neg.newton_tolerance = -1.0;
  CHECK_THROWS_AS(enumerate_squares(circle_curve(), neg), std::invalid_argument);

  SolveConfig iters;
  iters.max_newton_iterations = 0;
  CHECK_THROWS_AS(enumerate_squares(circle_curve(), iters), std::invalid_argument);
}

TEST_CASE("diagonal angle folds to the quarter turn") {
  const SolveReport report = enumerate_squares(corner_curve(), SolveConfig{});
  for (const Square& sq : report.squares) {
    const double a = diagonal_angle(sq);
    CHECK(a >= 0.0);
    CHECK(a < kPi / 2.0);
  }
  // axis-aligned big square has diagonals at 45 degrees
  std::vector<Square> sorted = report.squares;
  std::sort(sorted.begin(), sorted.end(), [](const Square& a, const Square& b) {
    return a.side_length < b.side_length;
  });
  CHECK(diagonal_angle(sorted[1]) == doctest::Approx(kPi / 4.0).epsilon(1e-8));
}
