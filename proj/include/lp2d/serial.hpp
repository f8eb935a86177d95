#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

// Randomized incremental solver for 2D linear programs. Constraints are
// inserted one at a time in a caller-supplied order; while the running
// optimum satisfies the new constraint nothing happens, and when it is
// violated the optimum is recomputed by solving the 1D program along the new
// constraint's boundary against everything considered so far. With a random
// insertion order the expected number of recomputes is O(log m), giving
// expected linear total work.

namespace lp2d {

/// Half-width of the bounding box added around every problem. The box keeps
/// all intermediate 1D programs bounded, so an unbounded input simply reports
/// its optimum on the box edge.
inline constexpr double default_bound = 1e7;

struct problem {
  objective obj;
  std::vector<half_plane> constraints;
  double bound_m = default_bound;
};

struct solution {
  bool feasible = false;
  vec2 point{};
  double value = 0.0;

  static solution optimal(vec2 p, double v) { return {true, p, v}; }
  static solution infeasible() { return {}; }

  friend constexpr bool operator==(const solution&, const solution&) = default;
};

/// The four box constraints x <= M, -x <= M, y <= M, -y <= M, in that fixed
/// order. They are considered before any user constraint and never permuted.
inline std::array<half_plane, 4> box_constraints(double bound_m) {
  return {{{{1.0, 0.0}, bound_m},
           {{-1.0, 0.0}, bound_m},
           {{0.0, 1.0}, bound_m},
           {{0.0, -1.0}, bound_m}}};
}

/// Corner of the box maximizing c. A zero component ties toward +M so the
/// start point is deterministic.
inline vec2 initial_optimum(const objective& c, double bound_m) {
  return {c.c.x < 0.0 ? -bound_m : bound_m, c.c.y < 0.0 ? -bound_m : bound_m};
}

/// Feasible interval [u_left, u_right] of a 1D program along a boundary
/// line, folded up one constraint classification at a time. min/max updates
/// are exact, so the folded interval does not depend on update order; that
/// property is what lets the batch engine redistribute the updates freely.
struct interval_1d {
  double u_left = -std::numeric_limits<double>::infinity();
  double u_right = std::numeric_limits<double>::infinity();
  bool infeasible = false;
};

inline void apply_bound(interval_1d& acc, const bound_class& cls) {
  switch (cls.kind) {
    case bound_kind::bounded_left:
      acc.u_left = std::fmax(acc.u_left, cls.sigma);
      break;
    case bound_kind::bounded_right:
      acc.u_right = std::fmin(acc.u_right, cls.sigma);
      break;
    case bound_kind::parallel_redundant:
      break;
    case bound_kind::parallel_infeasible:
      acc.infeasible = true;
      break;
  }
}

inline void merge(interval_1d& into, const interval_1d& from) {
  into.u_left = std::fmax(into.u_left, from.u_left);
  into.u_right = std::fmin(into.u_right, from.u_right);
  into.infeasible = into.infeasible || from.infeasible;
}

/// Turn a folded interval back into a point on the line: empty interval
/// means the whole program is infeasible, otherwise take the endpoint the
/// objective prefers (ties toward u_left).
inline solution resolve_on_line(const boundary_line& l, const interval_1d& acc,
                                const objective& c, const tolerance& tol) {
  if (acc.infeasible) return solution::infeasible();
  const double scale = std::fmax(std::fabs(acc.u_left), std::fabs(acc.u_right));
  if (acc.u_left > acc.u_right + tol.feas_slack(scale)) {
    return solution::infeasible();
  }
  const double along = dot(c.c, l.dir);
  double t;
  if (std::fabs(along) <= tol.eps_parallel * norm(c.c)) {
    t = acc.u_left;
  } else {
    t = along > 0.0 ? acc.u_right : acc.u_left;
  }
  const vec2 p = l.origin + t * l.dir;
  return solution::optimal(p, objective_value(c, p));
}

/// Solve the 1D program along l under every constraint in considered.
inline solution solve_1d(const boundary_line& l,
                         std::span<const half_plane> considered,
                         const objective& c, const tolerance& tol) {
  interval_1d acc;
  for (const half_plane& h : considered) {
    apply_bound(acc, classify(h, l, tol));
  }
  return resolve_on_line(l, acc, c, tol);
}

/// Insertion order for the user constraints (indices into
/// problem::constraints). The box constraints are outside the permutation.
struct permutation {
  std::vector<std::uint32_t> order;
};

inline permutation identity_permutation(std::size_t m) {
  permutation p;
  p.order.resize(m);
  std::iota(p.order.begin(), p.order.end(), 0u);
  return p;
}

/// Seeded Fisher-Yates shuffle of 0..m-1.
inline permutation shuffle(std::size_t m, std::uint64_t seed) {
  permutation p = identity_permutation(m);
  xoshiro256pp rng(seed);
  for (std::size_t i = m; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(p.order[i - 1], p.order[j]);
  }
  return p;
}

struct solve_stats {
  std::uint64_t violation_events = 0;  ///< iterations that forced a 1D solve
  std::uint64_t work_units = 0;        ///< constraint classifications performed
};

/// Objective value at the start point and after every recompute; useful for
/// checking that the intermediate optimum only ever moves down.
struct solve_trace {
  std::vector<double> values;
};

inline solution solve(const problem& p, const permutation& perm,
                      const tolerance& tol = {}, solve_stats* stats = nullptr,
                      solve_trace* trace = nullptr) {
  const std::size_t m = p.constraints.size();
  assert(perm.order.size() == m);

  std::vector<half_plane> considered;
  considered.reserve(m + 4);
  const auto box = box_constraints(p.bound_m);
  considered.insert(considered.end(), box.begin(), box.end());

  vec2 x = initial_optimum(p.obj, p.bound_m);
  if (trace) trace->values.push_back(objective_value(p.obj, x));

  for (std::size_t i = 0; i < m; ++i) {
    const half_plane& h = p.constraints[perm.order[i]];
    if (!satisfied(h, x, tol)) {
      if (stats) {
        stats->violation_events += 1;
        stats->work_units += considered.size();
      }
      const solution on_line = solve_1d(boundary_of(h), considered, p.obj, tol);
      if (!on_line.feasible) return solution::infeasible();
      x = on_line.point;
      if (trace) trace->values.push_back(on_line.value);
    }
    considered.push_back(h);
  }
  return solution::optimal(x, objective_value(p.obj, x));
}

}  // namespace lp2d
