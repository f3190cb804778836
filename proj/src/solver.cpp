#include "squarepeg/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>

namespace squarepeg {

namespace {

constexpr double kSingularRcond = 1e-12;
constexpr double kFineTol = 1e-9;   // key rounding separating genuinely distinct roots
constexpr double kRootTol = 1e-7;   // key rounding inside a densified cluster
constexpr double kInvSqrt2 = 0.70710678118654752440;

using Params = std::array<double, 4>;

double norm4(const std::array<double, 4>& f) {
  return std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2] + f[3] * f[3]);
}

Params wrap_params(Params t) {
  for (double& v : t) v = wrap_unit(v);
  return t;
}

// rotate so the smallest parameter leads, then pick the smaller of the two
// orientations; both keep the diagonal pairing {0,2} / {1,3}
Params canonical_rotation(Params t) {
  t = wrap_params(t);
  int i0 = 0;
  for (int i = 1; i < 4; ++i)
    if (t[i] < t[i0]) i0 = i;
  const Params rot{t[i0], t[(i0 + 1) % 4], t[(i0 + 2) % 4], t[(i0 + 3) % 4]};
  const Params rev{t[i0], t[(i0 + 3) % 4], t[(i0 + 2) % 4], t[(i0 + 1) % 4]};
  return rev < rot ? rev : rot;
}

double square_metric(const Square& a, const Square& b) {
  double d = std::fabs(a.center.x - b.center.x);
  d = std::max(d, std::fabs(a.center.y - b.center.y));
  d = std::max(d, std::fabs(a.side_length - b.side_length));
  d = std::max(d, angle_dist(diagonal_angle(a), diagonal_angle(b), 0.5 * kPi));
  return d;
}

bool params_less(const Square& a, const Square& b) { return a.params < b.params; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// does the move from a by delta (before wrapping) pass over joint T + integer?
bool crosses_joint(double a, double delta, double T) {
  if (delta == 0.0) return false;
  const double lo = std::min(a, a + delta);
  const double hi = std::max(a, a + delta);
  const double first = T + std::ceil(lo - T);
  return first > lo && first < hi;
}

void validate_config(const SolveConfig& c) {
  if (c.grid_resolution < 8) throw std::invalid_argument("gridResolution must be >= 8");
  if (!(c.newton_tolerance > 0.0) || !(c.dedup_tolerance > 0.0) ||
      !(c.min_side_length > 0.0) || !(c.family_gap_threshold > 0.0) ||
      !(c.vertex_tolerance > 0.0))
    throw std::invalid_argument("SolveConfig tolerances must be positive");
  if (c.max_newton_iterations < 1)
    throw std::invalid_argument("maxNewtonIterations must be >= 1");
}

template <class Fn>
void parallel_chunks(long n, int threads, const Fn& fn) {
  if (threads < 1) threads = 1;
  if (threads > 64) threads = 64;
  if (threads == 1 || n < 64) {
    fn(0L, n);
    return;
  }
  const long chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    const long b = w * chunk;
    const long e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

// Gauss-Newton over the non-frozen parameters; frozen entries stay exactly
// where they are. Returns the refined parameters when the residual reaches
// `target`, otherwise nullopt.
std::optional<Params> solve_with_frozen(const Curve& curve, Params t,
                                        const std::array<bool, 4>& frozen,
                                        double target, int max_iterations) {
  std::vector<int> free;
  for (int i = 0; i < 4; ++i)
    if (!frozen[i]) free.push_back(i);
  auto F = square_residual(curve, t);
  double rn = norm4(F);
  for (int iter = 0; iter < max_iterations && rn >= target; ++iter) {
    if (free.empty()) break;
    const Jacobian jac = residual_jacobian(curve, t);
    Eigen::MatrixXd J(4, static_cast<int>(free.size()));
    Eigen::Vector4d b;
    for (int r = 0; r < 4; ++r) {
      b(r) = -F[r];
      for (size_t c = 0; c < free.size(); ++c) J(r, static_cast<int>(c)) = jac.m[r][free[c]];
    }
    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(b);
    if (!step.allFinite()) break;
    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h < 12; ++h, alpha *= 0.5) {
      Params cand = t;
      for (size_t c = 0; c < free.size(); ++c)
        cand[free[c]] = wrap_unit(t[free[c]] + alpha * step(static_cast<int>(c)));
      const auto Fc = square_residual(curve, cand);
      const double rc = norm4(Fc);
      if (rc < rn) {
        t = cand;
        F = Fc;
        rn = rc;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (rn < target) return t;
  return std::nullopt;
}

// pin parameters near joints to the joints and re-solve the rest
std::optional<Square> snap_to_joints(const Curve& curve, const Square& sq,
                                     const SolveConfig& config) {
  Params t = sq.params;
  std::array<bool, 4> frozen{};
  int count = 0;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < curve.joint_count(); ++k) {
      if (wrap_dist(t[i], curve.joint_param(k)) < config.snap_window) {
        t[i] = curve.joint_param(k);
        frozen[i] = true;
        ++count;
        break;
      }
    }
  }
  if (count == 0) return std::nullopt;
  const double target = std::max(config.newton_tolerance, sq.residual_norm * (1.0 + 1e-9));
  auto solved = solve_with_frozen(curve, t, frozen, target, 40);
  if (!solved) return std::nullopt;
  for (int i = 0; i < 4; ++i) {
    if (!frozen[i] && wrap_dist((*solved)[i], sq.params[i]) > 0.02) return std::nullopt;
  }
  Square out = make_square(curve, *solved);
  if (out.residual_norm > target) return std::nullopt;
  return out;
}

// canonical representative of a one-parameter family: pin the parameter
// nearest the curve seam to t = 0 and re-solve the remaining three
Square seam_canonical(const Curve& curve, const Square& member, const SolveConfig& config) {
  Params t = member.params;
  int i0 = 0;
  for (int i = 1; i < 4; ++i)
    if (wrap_dist(t[i], 0.0) < wrap_dist(t[i0], 0.0)) i0 = i;
  Params rot{t[i0], t[(i0 + 1) % 4], t[(i0 + 2) % 4], t[(i0 + 3) % 4]};
  rot[0] = 0.0;
  const std::array<bool, 4> frozen{true, false, false, false};
  auto solved = solve_with_frozen(curve, rot, frozen, config.newton_tolerance, 60);
  if (!solved) return member;
  return make_square(curve, *solved);
}

// deterministic local reseeding that splits a cluster holding several
// genuinely distinct roots (e.g. the near-tangency pair at c close to the
// critical amplitude); returns the lexicographically smallest root
Square densify_cluster(const Curve& curve, const std::vector<Square>& members,
                       const SolveConfig& config) {
  const Square* base = &members[0];
  for (const Square& m : members)
    if (params_less(m, *base)) base = &m;

  const double ref1 = base->params[0];
  const double ref3 = base->params[2];
  double lo1 = 0.0, hi1 = 0.0, lo3 = 0.0, hi3 = 0.0;
  for (const Square& m : members) {
    double d1 = wrap_unit(m.params[0] - ref1 + 0.5) - 0.5;
    double d3 = wrap_unit(m.params[2] - ref3 + 0.5) - 0.5;
    lo1 = std::min(lo1, d1);
    hi1 = std::max(hi1, d1);
    lo3 = std::min(lo3, d3);
    hi3 = std::max(hi3, d3);
  }
  lo1 -= config.densify_window;
  hi1 += config.densify_window;
  lo3 -= config.densify_window;
  hi3 += config.densify_window;

  std::map<CanonicalKey, Square> roots;
  auto offer = [&](const Square& sq) {
    const CanonicalKey key = canonical_key(sq, kRootTol);
    auto it = roots.find(key);
    if (it == roots.end() || params_less(sq, it->second)) roots[key] = sq;
  };
  for (const Square& m : members) offer(m);

  const int n = 7;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Params seed = base->params;
      seed[0] = wrap_unit(ref1 + lo1 + (hi1 - lo1) * i / (n - 1));
      seed[2] = wrap_unit(ref3 + lo3 + (hi3 - lo3) * j / (n - 1));
      const NewtonResult nr = newton_refine(curve, seed, config);
      if (nr.status != NewtonStatus::kConverged) continue;
      const Square sq = make_square(curve, nr.params);
      if (sq.side_length <= config.min_side_length) continue;
      offer(sq);
    }
  }
  const Square* best = nullptr;
  for (const auto& [key, sq] : roots) {
    if (!best || key < canonical_key(*best, kRootTol)) best = &sq;
  }
  return best ? *best : *base;
}

struct FinalizeOutcome {
  std::vector<Square> squares;
  bool family = false;
};

// shared tail of both enumeration methods: degenerate filter, fine dedup,
// dedup-tolerance cluster merging, flat-cluster consolidation, joint
// snapping, family detection, canonical ordering
FinalizeOutcome finalize_candidates(const Curve& curve, const std::vector<Params>& converged,
                                    const SolveConfig& config, SolveStats* stats) {
  FinalizeOutcome out;

  std::map<CanonicalKey, Square> fine;
  for (const Params& p : converged) {
    const Square sq = make_square(curve, p);
    if (sq.side_length <= config.min_side_length) {
      ++stats->filtered_degenerate;
      continue;
    }
    const CanonicalKey key = canonical_key(sq, kFineTol);
    auto it = fine.find(key);
    if (it == fine.end() || params_less(sq, it->second)) fine[key] = sq;
  }
  std::vector<Square> reps;
  reps.reserve(fine.size());
  for (auto& [key, sq] : fine) reps.push_back(sq);

  // angles are cached up front; the pairwise stages below would otherwise
  // spend most of their time inside atan2
  std::vector<double> ang(reps.size());
  for (size_t i = 0; i < reps.size(); ++i) ang[i] = diagonal_angle(reps[i]);
  auto metric_at = [](const Square& a, double aa, const Square& b, double ab) {
    double d = std::fabs(a.center.x - b.center.x);
    d = std::max(d, std::fabs(a.center.y - b.center.y));
    d = std::max(d, std::fabs(a.side_length - b.side_length));
    d = std::max(d, angle_dist(aa, ab, 0.5 * kPi));
    return d;
  };

  // merge everything within dedup tolerance in (center, size, angle) space
  const int nr = static_cast<int>(reps.size());
  UnionFind uf(nr);
  for (int i = 0; i < nr; ++i)
    for (int j = i + 1; j < nr; ++j)
      if (metric_at(reps[i], ang[i], reps[j], ang[j]) < config.dedup_tolerance)
        uf.unite(i, j);

  std::map<int, std::vector<Square>> groups;
  for (int i = 0; i < nr; ++i) groups[uf.find(i)].push_back(reps[i]);

  std::vector<Square> merged;
  for (auto& [root, members] : groups) {
    double spread = 0.0;
    for (const Square& m : members) {
      spread = std::max(spread, std::fabs(m.center.x - members[0].center.x));
      spread = std::max(spread, std::fabs(m.center.y - members[0].center.y));
      spread = std::max(spread, std::fabs(m.side_length - members[0].side_length));
    }
    if (members.size() > 1 && spread > config.flat_tolerance) {
      merged.push_back(densify_cluster(curve, members, config));
    } else {
      const Square* best = &members[0];
      for (const Square& m : members)
        if (params_less(m, *best)) best = &m;
      merged.push_back(*best);
    }
  }

  // consolidate flat pseudo-arcs: same center and size, chained in angle
  const int nm = static_cast<int>(merged.size());
  std::vector<double> mang(merged.size());
  for (size_t i = 0; i < merged.size(); ++i) mang[i] = diagonal_angle(merged[i]);
  UnionFind flat(nm);
  for (int i = 0; i < nm; ++i) {
    for (int j = i + 1; j < nm; ++j) {
      const Square &a = merged[i], &b = merged[j];
      const bool same_geom = std::fabs(a.center.x - b.center.x) <= config.flat_tolerance &&
                             std::fabs(a.center.y - b.center.y) <= config.flat_tolerance &&
                             std::fabs(a.side_length - b.side_length) <= config.flat_tolerance;
      if (same_geom && angle_dist(mang[i], mang[j], 0.5 * kPi) <= config.flat_angle_link)
        flat.unite(i, j);
    }
  }
  std::map<int, std::vector<Square>> flat_groups;
  for (int i = 0; i < nm; ++i) flat_groups[flat.find(i)].push_back(merged[i]);

  std::vector<Square> finals;
  for (auto& [root, members] : flat_groups) {
    // wrap-aware angular extent on the quarter-turn circle
    double extent = 0.0;
    if (members.size() > 1) {
      std::vector<double> angles;
      for (const Square& m : members) angles.push_back(diagonal_angle(m));
      std::sort(angles.begin(), angles.end());
      double max_gap = angles.front() + 0.5 * kPi - angles.back();
      for (size_t i = 1; i < angles.size(); ++i)
        max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
      extent = 0.5 * kPi - max_gap;
    }
    const Square* best = &members[0];
    for (const Square& m : members)
      if (params_less(m, *best)) best = &m;
    if (extent > config.family_extent) {
      out.family = true;
      finals.push_back(seam_canonical(curve, *best, config));
    } else {
      finals.push_back(*best);
    }
  }

  for (Square& sq : finals) {
    if (auto snapped = snap_to_joints(curve, sq, config)) sq = *snapped;
  }

  // snapping may fuse representatives; dedup once more and order canonically
  std::map<CanonicalKey, Square> unique;
  for (const Square& sq : finals) {
    const CanonicalKey key = canonical_key(sq, kFineTol);
    auto it = unique.find(key);
    if (it == unique.end() || params_less(sq, it->second)) unique[key] = sq;
  }
  out.squares.clear();
  for (auto& [key, sq] : unique) out.squares.push_back(sq);

  if (static_cast<long>(out.squares.size()) > 4L * config.grid_resolution) out.family = true;
  const int nf = static_cast<int>(out.squares.size());
  if (nf >= 10) {
    UnionFind chain(nf);
    for (int i = 0; i < nf; ++i)
      for (int j = i + 1; j < nf; ++j)
        if (square_metric(out.squares[i], out.squares[j]) < config.family_gap_threshold)
          chain.unite(i, j);
    std::map<int, int> sizes;
    for (int i = 0; i < nf; ++i) ++sizes[chain.find(i)];
    for (const auto& [root, size] : sizes)
      if (size >= 10) out.family = true;
  }
  return out;
}

}  // namespace

std::array<double, 4> square_residual(const Curve& curve, const std::array<double, 4>& t) {
  const Point p1 = curve.eval(t[0]);
  const Point p2 = curve.eval(t[1]);
  const Point p3 = curve.eval(t[2]);
  const Point p4 = curve.eval(t[3]);
  const Vec2 d13 = p1 - p3;
  const Vec2 d24 = p2 - p4;
  return {p1.x + p3.x - p2.x - p4.x, p1.y + p3.y - p2.y - p4.y,
          norm2(d13) - norm2(d24), dot(d13, d24)};
}

Jacobian residual_jacobian(const Curve& curve, const std::array<double, 4>& t) {
  Jacobian jac;
  Jet2 j[4];
  for (int i = 0; i < 4; ++i) j[i] = curve.jet(t[i]);
  const Vec2 d13 = j[0].p - j[2].p;
  const Vec2 d24 = j[1].p - j[3].p;
  const double sgn[4] = {1.0, -1.0, 1.0, -1.0};
  for (int i = 0; i < 4; ++i) {
    jac.m[0][i] = sgn[i] * j[i].d1.x;
    jac.m[1][i] = sgn[i] * j[i].d1.y;
  }
  jac.m[2][0] = 2.0 * dot(d13, j[0].d1);
  jac.m[2][1] = -2.0 * dot(d24, j[1].d1);
  jac.m[2][2] = -2.0 * dot(d13, j[2].d1);
  jac.m[2][3] = 2.0 * dot(d24, j[3].d1);
  jac.m[3][0] = dot(j[0].d1, d24);
  jac.m[3][1] = dot(d13, j[1].d1);
  jac.m[3][2] = -dot(j[2].d1, d24);
  jac.m[3][3] = -dot(d13, j[3].d1);
  if (curve.has_corners()) {
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < curve.joint_count(); ++k)
        if (!curve.joint_is_smooth(k) && wrap_dist(t[i], curve.joint_param(k)) < 1e-12)
          jac.one_sided = true;
  }
  return jac;
}

NewtonResult newton_refine(const Curve& curve, std::array<double, 4> seed,
                           const SolveConfig& config) {
  NewtonResult res;
  Params t = wrap_params(seed);
  auto F = square_residual(curve, t);
  double rn = norm4(F);

  std::vector<double> corners;
  if (curve.has_corners()) {
    for (int k = 0; k < curve.joint_count(); ++k)
      if (!curve.joint_is_smooth(k)) corners.push_back(curve.joint_param(k));
  }
  bool corner_restarted = false;

  for (int iter = 0; iter < config.max_newton_iterations; ++iter) {
    res.iterations = iter;
    if (rn < config.newton_tolerance) {
      res.status = NewtonStatus::kConverged;
      res.params = canonical_rotation(t);
      res.residual_norm = rn;
      return res;
    }
    const Jacobian jac = residual_jacobian(curve, t);
    Eigen::Matrix4d A;
    Eigen::Vector4d b;
    for (int r = 0; r < 4; ++r) {
      b(r) = -F[r];
      for (int c = 0; c < 4; ++c) A(r, c) = jac.m[r][c];
    }
    Eigen::Vector4d step;
    bool singular_direction = false;
    const Eigen::PartialPivLU<Eigen::Matrix4d> lu(A);
    const double rc = lu.rcond();
    if (!std::isfinite(rc) || rc < kSingularRcond) {
      // rank-deficient along a solution family: take the minimum-norm
      // truncated-SVD step instead of failing outright
      Eigen::JacobiSVD<Eigen::Matrix4d> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
      svd.setThreshold(1e-10);
      singular_direction = true;
      if (svd.rank() == 0) {
        res.status = NewtonStatus::kSingular;
        res.params = canonical_rotation(t);
        res.residual_norm = rn;
        return res;
      }
      step = svd.solve(b);
    } else {
      step = lu.solve(b);
    }
    if (!step.allFinite()) {
      res.status = NewtonStatus::kSingular;
      res.params = canonical_rotation(t);
      res.residual_norm = rn;
      return res;
    }

    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h < 12; ++h, alpha *= 0.5) {
      Params cand;
      bool snapped = false;
      for (int i = 0; i < 4; ++i) {
        const double delta = alpha * step(i);
        double value = t[i] + delta;
        if (!corner_restarted) {
          for (double tc : corners) {
            if (crosses_joint(t[i], delta, tc)) {
              value = tc;
              snapped = true;
              break;
            }
          }
        }
        cand[i] = wrap_unit(value);
      }
      const auto Fc = square_residual(curve, cand);
      const double rc2 = norm4(Fc);
      if (rc2 < rn) {
        t = cand;
        F = Fc;
        rn = rc2;
        accepted = true;
        if (snapped) corner_restarted = true;
        break;
      }
    }
    if (!accepted) {
      res.status = singular_direction ? NewtonStatus::kSingular : NewtonStatus::kNoConvergence;
      res.params = canonical_rotation(t);
      res.residual_norm = rn;
      return res;
    }
  }
  res.status = rn < config.newton_tolerance ? NewtonStatus::kConverged
                                            : NewtonStatus::kNoConvergence;
  res.params = canonical_rotation(t);
  res.residual_norm = rn;
  return res;
}

Square make_square(const Curve& curve, const std::array<double, 4>& params) {
  const Params t = canonical_rotation(params);
  Square sq;
  sq.params = t;
  for (int i = 0; i < 4; ++i) sq.vertices[i] = curve.eval(t[i]);
  sq.center = 0.25 * (sq.vertices[0] + sq.vertices[1] + sq.vertices[2] + sq.vertices[3]);
  sq.half_diagonal = 0.5 * (sq.vertices[2] - sq.vertices[0]);
  sq.side_length =
      (dist(sq.vertices[0], sq.vertices[2]) + dist(sq.vertices[1], sq.vertices[3])) *
      (0.5 * kInvSqrt2);
  sq.residual_norm = norm4(square_residual(curve, t));
  return sq;
}

double diagonal_angle(const Square& sq) {
  Vec2 d = sq.half_diagonal;
  if (norm2(d) < 1e-300) d = 0.5 * (sq.vertices[3] - sq.vertices[1]);
  double ang = std::fmod(std::atan2(d.y, d.x), 0.5 * kPi);
  if (ang < 0.0) ang += 0.5 * kPi;
  return ang;
}

CanonicalKey canonical_key(const Square& sq, double tolerance) {
  CanonicalKey key;
  key.cx = std::llround(sq.center.x / tolerance);
  key.cy = std::llround(sq.center.y / tolerance);
  key.side = std::llround(sq.side_length / tolerance);
  const double a4 = 4.0 * diagonal_angle(sq);
  key.ac = std::llround(std::cos(a4) / tolerance);
  key.as = std::llround(std::sin(a4) / tolerance);
  return key;
}

bool verify_square(const Curve& curve, const Square& sq, const SolveConfig& config,
                   std::string* why) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  for (const Point& v : sq.vertices) {
    if (!is_finite(v)) return fail("non-finite vertex");
    if (curve.closest_point(v).distance >= config.vertex_tolerance)
      return fail("vertex off curve");
  }
  if (sq.side_length < config.min_side_length) return fail("degenerate side length");
  double side[4];
  for (int i = 0; i < 4; ++i) side[i] = dist(sq.vertices[i], sq.vertices[(i + 1) % 4]);
  const double smax = std::max({side[0], side[1], side[2], side[3]});
  const double smin = std::min({side[0], side[1], side[2], side[3]});
  if (smax - smin > 1e-8 * smax) return fail("sides unequal");
  const Vec2 d1 = sq.vertices[2] - sq.vertices[0];
  const Vec2 d2 = sq.vertices[3] - sq.vertices[1];
  const double len1 = norm(d1), len2 = norm(d2);
  if (std::fabs(len1 - len2) > 1e-8 * std::max(len1, len2))
    return fail("diagonals unequal");
  if (std::fabs(dot(d1, d2)) > 1e-8 * len1 * len2) return fail("diagonals not perpendicular");
  const Point m1 = 0.5 * (sq.vertices[0] + sq.vertices[2]);
  const Point m2 = 0.5 * (sq.vertices[1] + sq.vertices[3]);
  if (dist(m1, m2) > 1e-8 * std::max(1.0, sq.side_length))
    return fail("diagonals do not bisect");
  return true;
}

SolveReport enumerate_squares(const Curve& curve, const SolveConfig& config) {
  validate_config(config);
  const auto t_start = std::chrono::steady_clock::now();

  SolveReport report;
  report.curve_name = curve.spec().name;
  report.config = config;

  const int g = config.grid_resolution;
  std::vector<Point> grid(g);
  for (int i = 0; i < g; ++i) grid[i] = curve.eval(static_cast<double>(i) / g);

  std::vector<Params> seeds;
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j)
      for (int k = j + 1; k < g; ++k)
        for (int l = k + 1; l < g; ++l) {
          const double side_est =
              std::max(dist(grid[i], grid[k]), dist(grid[j], grid[l])) * kInvSqrt2;
          if (side_est <= config.min_side_length) continue;
          seeds.push_back({static_cast<double>(i) / g, static_cast<double>(j) / g,
                           static_cast<double>(k) / g, static_cast<double>(l) / g});
        }
  report.stats.seeds_tried = static_cast<long>(seeds.size());

  std::vector<NewtonResult> results(seeds.size());
  parallel_chunks(static_cast<long>(seeds.size()), config.threads, [&](long b, long e) {
    for (long s = b; s < e; ++s) results[s] = newton_refine(curve, seeds[s], config);
  });

  std::vector<Params> converged;
  for (const NewtonResult& r : results) {
    if (r.status == NewtonStatus::kConverged) converged.push_back(r.params);
  }
  report.stats.converged = static_cast<long>(converged.size());

  FinalizeOutcome fin = finalize_candidates(curve, converged, config, &report.stats);
  report.squares = std::move(fin.squares);
  report.family_suspected = fin.family;

  report.stats.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

std::vector<Square> oracle_enumerate(const Curve& curve, int resolution,
                                     const SolveConfig& config) {
  validate_config(config);
  if (resolution < 256) throw std::invalid_argument("oracle resolution must be >= 256");

  const int r = resolution;
  std::vector<Point> grid(r);
  for (int i = 0; i < r; ++i) grid[i] = curve.eval(static_cast<double>(i) / r);
  const std::vector<Point>& cache = curve.sample_cache();

  auto scan_dist = [&cache](Point q) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& p : cache) best = std::min(best, norm2(p - q));
    return std::sqrt(best);
  };

  const double big = std::numeric_limits<double>::infinity();
  std::vector<double> rho(static_cast<size_t>(r) * r, big);
  parallel_chunks(r, config.threads, [&](long b, long e) {
    for (long i = b; i < e; ++i) {
      for (int j = 0; j < r; ++j) {
        if (i == j) continue;
        const Point p1 = grid[i], p3 = grid[j];
        const Vec2 d = 0.5 * (p3 - p1);
        if (norm(d) * 1.4142135623730951 <= config.min_side_length) continue;
        const Point m = 0.5 * (p1 + p3);
        const Vec2 n = rot90(d);
        const double dp = scan_dist(m + n);
        const double dm = scan_dist(m - n);
        rho[i * r + j] = std::hypot(dp, dm);
      }
    }
  });

  auto at = [&rho, r](int i, int j) {
    return rho[static_cast<size_t>((i + r) % r) * r + (j + r) % r];
  };
  std::vector<std::pair<int, int>> minima;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const double v = at(i, j);
      if (v >= config.oracle_threshold) continue;
      bool lowest = true;
      for (int di = -1; di <= 1 && lowest; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (at(i + di, j + dj) < v) {
            lowest = false;
            break;
          }
        }
      if (lowest) minima.emplace_back(i, j);
    }
  }

  SolveStats stats;
  std::vector<Params> converged;
  for (const auto& [gi, gj] : minima) {
    double t1 = static_cast<double>(gi) / r;
    double t3 = static_cast<double>(gj) / r;

    Curve::ClosestPoint cp_plus, cp_minus;
    for (int iter = 0; iter < 30; ++iter) {
      const Jet2 j1 = curve.jet(t1);
      const Jet2 j3 = curve.jet(t3);
      const Vec2 d = 0.5 * (j3.p - j1.p);
      const Point m = 0.5 * (j1.p + j3.p);
      const Point qp = m + rot90(d);
      const Point qm = m - rot90(d);
      cp_plus = curve.closest_point(qp);
      cp_minus = curve.closest_point(qm);
      const Jet2 fp = curve.jet(cp_plus.t);
      const Jet2 fm = curve.jet(cp_minus.t);
      const Vec2 np = rot90(fp.d1 / norm(fp.d1));
      const Vec2 nm = rot90(fm.d1 / norm(fm.d1));
      const double sp = dot(qp - fp.p, np);
      const double sm = dot(qm - fm.p, nm);
      if (std::fabs(sp) < 1e-13 && std::fabs(sm) < 1e-13) break;
      const Vec2 h1p = 0.5 * (j1.d1 - rot90(j1.d1));
      const Vec2 h3p = 0.5 * (j3.d1 + rot90(j3.d1));
      const Vec2 h1m = 0.5 * (j1.d1 + rot90(j1.d1));
      const Vec2 h3m = 0.5 * (j3.d1 - rot90(j3.d1));
      const double a11 = dot(np, h1p), a12 = dot(np, h3p);
      const double a21 = dot(nm, h1m), a22 = dot(nm, h3m);
      const double det = a11 * a22 - a12 * a21;
      if (std::fabs(det) < 1e-300) break;
      double s1 = (-sp * a22 + sm * a12) / det;
      double s3 = (-a11 * sm + a21 * sp) / det;
      const double cap = 3.0 / r;
      s1 = std::clamp(s1, -cap, cap);
      s3 = std::clamp(s3, -cap, cap);
      t1 = wrap_unit(t1 + s1);
      t3 = wrap_unit(t3 + s3);
      if (std::fabs(s1) < 1e-15 && std::fabs(s3) < 1e-15) break;
    }

    if (std::max(cp_plus.distance, cp_minus.distance) > 1e-9) {
      ++stats.filtered_off_curve;
      continue;
    }
    const Params quad{t1, cp_plus.t, t3, cp_minus.t};
    const NewtonResult nr = newton_refine(curve, quad, config);
    if (nr.status != NewtonStatus::kConverged) {
      ++stats.filtered_off_curve;
      continue;
    }
    converged.push_back(nr.params);
  }
  stats.converged = static_cast<long>(converged.size());

  FinalizeOutcome fin = finalize_candidates(curve, converged, config, &stats);
  return fin.squares;
}

double vertex_set_hausdorff(const Square& a, const Square& b) {
  double worst = 0.0;
  for (const Point& v : a.vertices) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& w : b.vertices) best = std::min(best, dist(v, w));
    worst = std::max(worst, best);
  }
  for (const Point& w : b.vertices) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& v : a.vertices) best = std::min(best, dist(v, w));
    worst = std::max(worst, best);
  }
  return worst;
}

bool square_sets_match(const std::vector<Square>& a, const std::vector<Square>& b,
                       double tolerance, double* worst) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  double wmax = 0.0;
  for (const Square& sa : a) {
    int pick = -1;
    double best = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double h = vertex_set_hausdorff(sa, b[j]);
      if (h < best) {
        best = h;
        pick = static_cast<int>(j);
      }
    }
    if (pick < 0 || best >= tolerance) return false;
    used[pick] = true;
    wmax = std::max(wmax, best);
  }
  if (worst) *worst = wmax;
  return true;
}

}  // namespace squarepeg
