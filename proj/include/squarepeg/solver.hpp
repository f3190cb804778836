#pragma once

#include <array>
#include <string>
#include <vector>

#include "squarepeg/curve.hpp"

namespace squarepeg {

struct Square {
  std::array<double, 4> params{};   // each in [0,1), canonically rotated
  std::array<Point, 4> vertices{};
  Point center;
  Vec2 half_diagonal;               // (vertices[2] - vertices[0]) / 2
  double side_length = 0.0;
  double residual_norm = 0.0;
};

struct SolveConfig {
  int grid_resolution = 24;
  double newton_tolerance = 1e-12;
  int max_newton_iterations = 50;
  double dedup_tolerance = 1e-6;    // in (center, size, angle) space
  double min_side_length = 1e-2;
  // nearest-neighbor spacing below this across a chain of >= 10 distinct
  // squares flags a solution family (default 10 * dedup_tolerance)
  double family_gap_threshold = 1e-5;
  double vertex_tolerance = 1e-8;
  int threads = 1;

  // consolidation knobs. Flat bump endpoints make every isolated square a
  // short pseudo-arc of numerically exact solutions; members of one such
  // cluster agree in center and size to flat_tolerance and are chained in
  // diagonal angle at radius flat_angle_link. A chain spanning more than
  // family_extent radians is a genuine one-parameter family.
  double flat_tolerance = 1e-7;
  double flat_angle_link = 0.065;
  double family_extent = 0.25;
  // vertex parameters within this window (t units) of a joint are pinned to
  // the joint and the remaining parameters re-solved
  double snap_window = 0.0075;
  // half-width (t units) of the deterministic reseeding box used to split
  // clusters that merged several distinct roots
  double densify_window = 2e-3;
  // coarse threshold on the oracle grid residual
  double oracle_threshold = 0.1;
};

struct SolveStats {
  long seeds_tried = 0;
  long converged = 0;
  long filtered_degenerate = 0;
  long filtered_off_curve = 0;
  double wall_time_seconds = 0.0;
};

struct SolveReport {
  std::string curve_name;
  SolveConfig config;
  std::vector<Square> squares;
  bool family_suspected = false;
  SolveStats stats;
};

// F1 = x1+x3-x2-x4, F2 = y1+y3-y2-y4,
// F3 = |p1-p3|^2 - |p2-p4|^2, F4 = (p1-p3).(p2-p4);
// F = 0 with distinct vertices iff p1 p2 p3 p4 is a square in cyclic order
std::array<double, 4> square_residual(const Curve& curve, const std::array<double, 4>& t);

struct Jacobian {
  std::array<std::array<double, 4>, 4> m{};
  bool one_sided = false;  // some parameter sits at a corner joint
};
Jacobian residual_jacobian(const Curve& curve, const std::array<double, 4>& t);

enum class NewtonStatus { kConverged, kNoConvergence, kSingular };

struct NewtonResult {
  NewtonStatus status = NewtonStatus::kNoConvergence;
  std::array<double, 4> params{};
  double residual_norm = 0.0;
  int iterations = 0;
};

// damped Newton (halving line search), parameters wrapped mod 1 each step;
// singular = condition estimate above 1e12 with no usable descent
NewtonResult newton_refine(const Curve& curve, std::array<double, 4> seed,
                           const SolveConfig& config);

// fills vertices, center, size, residual from canonically rotated params
Square make_square(const Curve& curve, const std::array<double, 4>& params);

// diagonal direction folded to [0, pi/2)
double diagonal_angle(const Square& sq);

struct CanonicalKey {
  long long cx = 0, cy = 0, side = 0, ac = 0, as = 0;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};
// invariant under the 8 relabelings of one geometric square; the diagonal
// angle is encoded through (cos 4a, sin 4a) so the fold wraps cleanly
CanonicalKey canonical_key(const Square& sq, double tolerance);

// independent post-hoc check of the Square invariants
bool verify_square(const Curve& curve, const Square& sq, const SolveConfig& config,
                   std::string* why = nullptr);

SolveReport enumerate_squares(const Curve& curve, const SolveConfig& config = {});

// independent second method over (t1, t3) diagonal pairs
std::vector<Square> oracle_enumerate(const Curve& curve, int resolution = 512,
                                     const SolveConfig& config = {});

double vertex_set_hausdorff(const Square& a, const Square& b);

// one-to-one matching of square lists under vertex-set Hausdorff distance
bool square_sets_match(const std::vector<Square>& a, const std::vector<Square>& b,
                       double tolerance, double* worst = nullptr);

}  // namespace squarepeg
