#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "serial.hpp"

// Brute-force reference solver: enumerate every vertex formed by a pair of
// constraint boundaries (box edges included), keep the feasible ones, return
// the best. Quadratic in the constraint count and entirely independent of
// the incremental machinery, which is the point: it is the ground truth the
// fast solvers are checked against.

namespace lp2d {

/// Instances above this size are refused; the enumeration is O(m^3) and the
/// oracle is meant for verification, not benchmarking.
inline constexpr std::size_t oracle_cap = 512;

inline solution solve_bruteforce(const problem& p, const tolerance& tol = {}) {
  if (p.constraints.size() > oracle_cap) {
    throw std::invalid_argument(
        "solve_bruteforce: instance larger than the oracle cap");
  }

  std::vector<half_plane> all;
  all.reserve(p.constraints.size() + 4);
  const auto box = box_constraints(p.bound_m);
  all.insert(all.end(), box.begin(), box.end());
  all.insert(all.end(), p.constraints.begin(), p.constraints.end());

  bool have = false;
  vec2 best_point{};
  double best_value = 0.0;

  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const half_plane& g = all[i];
      const half_plane& h = all[j];
      const double det = cross(g.a, h.a);
      // Near-parallel pairs have no well-conditioned vertex; skip them. Any
      // optimum they could define is also defined by a better pair.
      if (std::fabs(det) <= tol.eps_parallel * norm(g.a) * norm(h.a)) continue;

      const vec2 v = {(g.b * h.a.y - h.b * g.a.y) / det,
                      (g.a.x * h.b - h.a.x * g.b) / det};
      bool feasible = true;
      for (const half_plane& q : all) {
        if (!satisfied(q, v, tol)) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;

      const double value = objective_value(p.obj, v);
      // Exact ties break toward the lexicographically smallest point so the
      // reported vertex is deterministic.
      const bool better =
          !have || value > best_value ||
          (value == best_value &&
           (v.x < best_point.x || (v.x == best_point.x && v.y < best_point.y)));
      if (better) {
        have = true;
        best_point = v;
        best_value = value;
      }
    }
  }
  return have ? solution::optimal(best_point, best_value)
              : solution::infeasible();
}

}  // namespace lp2d
