#pragma once

#include <atomic>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "core.hpp"
#include "serial.hpp"

// Lockstep batch execution of the incremental solver. Problems are laid out
// on the lanes of fixed-width blocks and all lanes of a block advance through
// the same constraint-insertion iteration together. Within an iteration the
// lanes whose optimum is violated each owe a 1D re-solve, and the unit of
// work is one constraint classification; the two schedulers differ only in
// which lane performs which unit:
//
//  naive     every violated lane rescans its own prefix while satisfied
//            lanes sit masked, so one violated lane drags the whole block
//            through a full rescan;
//  balanced  the block's units are counted, then dealt round-robin across
//            all lanes into shared per-problem interval accumulators.
//
// Execution emulates the block-synchronous schedule literally, round by
// round: each round issues one slot per lane, and a lane with nothing to do
// burns its slot. Wall-clock differences between the schedulers therefore
// come from the schedule itself, the way they do on wide SIMD hardware, not
// from host parallelism. Blocks are independent and may run on worker
// threads; lanes within a block are stepped deterministically, so results
// and statistics are reproducible regardless of worker count.

namespace lp2d {

enum class scheduler_kind : std::uint8_t { naive, balanced };

inline const char* to_string(scheduler_kind s) {
  return s == scheduler_kind::naive ? "naive" : "balanced";
}

struct batch {
  std::vector<problem> problems;
  std::vector<permutation> permutations;
};

struct block_config {
  std::size_t block_width = 512;
  scheduler_kind scheduler = scheduler_kind::balanced;
  /// Worker threads across blocks; 0 means one per hardware thread. Never
  /// affects results, only wall time on multi-core hosts.
  unsigned workers = 0;
  /// Keep per-iteration lane detail (memory-hungry; off for benchmarks).
  bool record_iterations = false;
};

/// One constraint classification owed by one problem of a block.
struct work_unit {
  std::uint32_t problem_index;
  std::uint32_t constraint_index;
  friend constexpr bool operator==(const work_unit&, const work_unit&) = default;
};

/// Sum of the per-lane violation flags; the count of lanes that owe a 1D
/// re-solve this iteration.
inline std::size_t block_reduce_sum(std::span<const std::uint8_t> flags) {
  return std::accumulate(flags.begin(), flags.end(), std::size_t{0});
}

/// Dense index of work unit j for an iteration with n units per violated
/// problem: unit j belongs to the (j / n)-th entry of the compacted active
/// list and classifies that problem's (j % n)-th considered constraint.
inline work_unit map_work_unit(std::size_t j,
                               std::span<const std::uint32_t> active,
                               std::size_t n) {
  assert(n > 0 && j < active.size() * n);
  return {active[j / n], static_cast<std::uint32_t>(j % n)};
}

/// Per-iteration execution detail of one block, kept only on request.
struct iteration_record {
  std::uint32_t block = 0;
  std::uint32_t iteration = 0;     ///< 1-based insertion step
  std::uint32_t active_lanes = 0;  ///< lanes owing a re-solve
  std::uint32_t masked_lanes = 0;  ///< lanes with no constraint this step
  std::uint64_t wu_count = 0;      ///< units dealt this step
  std::uint64_t idle_steps = 0;    ///< burned lane slots during unit rounds
  std::vector<std::uint32_t> lane_wu;  ///< units executed per lane
};

struct lane_stats {
  std::size_t block_width = 0;
  std::size_t blocks = 0;
  /// Work units executed per lane over the whole run, all blocks
  /// concatenated (block b lane l at index b * block_width + l).
  std::vector<std::uint64_t> lane_wu;
  std::uint64_t total_wu = 0;
  std::uint64_t violation_events = 0;
  /// Lane slots burned with no work: lanes masked during violation checks
  /// and lanes idle during unit rounds.
  std::uint64_t masked_lane_iterations = 0;
  std::uint64_t idle_wu_steps = 0;
  std::vector<iteration_record> iterations;  ///< only when record_iterations
};

/// Max over mean of per-lane executed work units; 1.0 is a perfectly even
/// deal. Meaningless with no work at all, hence the throw.
inline double lane_imbalance(const lane_stats& stats) {
  if (stats.total_wu == 0) {
    throw std::invalid_argument("lane_imbalance: no work units were executed");
  }
  std::uint64_t max_wu = 0;
  for (const std::uint64_t wu : stats.lane_wu) max_wu = std::max(max_wu, wu);
  const double mean =
      static_cast<double>(stats.total_wu) / static_cast<double>(stats.lane_wu.size());
  return static_cast<double>(max_wu) / mean;
}

namespace detail {

struct block_lane {
  const problem* prob = nullptr;
  const permutation* perm = nullptr;
  std::array<half_plane, 4> box{};
  vec2 point{};
  std::size_t m = 0;
  bool live = false;
  bool infeasible = false;
};

/// Considered-order accessor: positions 0..3 are the box, position k >= 4 is
/// the (k - 4)-th user constraint in this lane's insertion order. Both
/// schedulers and the serial solver walk constraints in exactly this order.
inline const half_plane& considered_at(const block_lane& lane, std::size_t k) {
  return k < 4 ? lane.box[k] : lane.prob->constraints[lane.perm->order[k - 4]];
}

struct block_result {
  std::vector<std::uint64_t> lane_wu;
  std::uint64_t violation_events = 0;
  std::uint64_t masked_lane_iterations = 0;
  std::uint64_t idle_wu_steps = 0;
  std::vector<iteration_record> iterations;
};

inline void run_block(std::span<const problem> problems,
                      std::span<const permutation> perms, std::size_t first,
                      std::size_t count, const block_config& cfg,
                      const tolerance& tol, std::span<solution> out,
                      block_result& res, std::uint32_t block_index) {
  const std::size_t width = cfg.block_width;
  res.lane_wu.assign(width, 0);

  std::vector<block_lane> lanes(width);
  std::size_t lp_max = 0;
  for (std::size_t l = 0; l < count; ++l) {
    block_lane& lane = lanes[l];
    lane.prob = &problems[first + l];
    lane.perm = &perms[first + l];
    lane.box = box_constraints(lane.prob->bound_m);
    lane.point = initial_optimum(lane.prob->obj, lane.prob->bound_m);
    lane.m = lane.prob->constraints.size();
    lane.live = true;
    lp_max = std::max(lp_max, lane.m);
  }

  std::vector<std::uint8_t> flags(width, 0);
  std::vector<std::uint32_t> active;
  active.reserve(width);
  std::vector<boundary_line> lines(width);
  std::vector<interval_1d> slots(width);

  for (std::size_t iter = 1; iter <= lp_max; ++iter) {
    // Considered prefix: 4 box constraints plus the iter-1 user constraints
    // already inserted. The constraint under test sits at position `prefix`.
    const std::size_t prefix = 4 + (iter - 1);

    std::uint32_t masked = 0;
    for (std::size_t l = 0; l < width; ++l) {
      block_lane& lane = lanes[l];
      if (!lane.live || lane.infeasible || iter > lane.m) {
        flags[l] = 0;
        ++masked;
        continue;
      }
      flags[l] =
          satisfied(considered_at(lane, prefix), lane.point, tol) ? 0 : 1;
    }
    // Barrier: every flag is written before any lane counts them.
    const std::size_t active_lanes = block_reduce_sum(flags);
    res.masked_lane_iterations += masked;

    std::uint64_t idle = 0;
    std::uint64_t wu_count = 0;
    iteration_record rec;
    if (cfg.record_iterations) {
      rec.block = block_index;
      rec.iteration = static_cast<std::uint32_t>(iter);
      rec.active_lanes = static_cast<std::uint32_t>(active_lanes);
      rec.masked_lanes = masked;
      rec.lane_wu.assign(width, 0);
    }

    if (active_lanes > 0) {
      res.violation_events += active_lanes;
      active.clear();
      for (std::size_t l = 0; l < width; ++l) {
        if (flags[l]) {
          active.push_back(static_cast<std::uint32_t>(l));
          lines[l] = boundary_of(considered_at(lanes[l], prefix));
          slots[l] = interval_1d{};
        }
      }
      wu_count = static_cast<std::uint64_t>(active_lanes) * prefix;

      if (cfg.scheduler == scheduler_kind::balanced) {
        // Deal the units round-robin: round r gives lane l unit r*width+l.
        // Updates land in the owning problem's shared interval slot; min/max
        // folding is order-independent, so scattering the units is safe.
        const std::size_t rounds = (wu_count + width - 1) / width;
        for (std::size_t r = 0; r < rounds; ++r) {
          for (std::size_t l = 0; l < width; ++l) {
            const std::uint64_t j = static_cast<std::uint64_t>(r) * width + l;
            if (j < wu_count) {
              const work_unit wu =
                  map_work_unit(static_cast<std::size_t>(j), active, prefix);
              const block_lane& owner = lanes[wu.problem_index];
              apply_bound(slots[wu.problem_index],
                          classify(considered_at(owner, wu.constraint_index),
                                   lines[wu.problem_index], tol));
              ++res.lane_wu[l];
              if (cfg.record_iterations) ++rec.lane_wu[l];
            } else {
              ++idle;
            }
          }
        }
      } else {
        // Each violated lane classifies its own prefix; everyone else burns
        // `prefix` slots waiting for the stragglers.
        for (std::size_t k = 0; k < prefix; ++k) {
          for (std::size_t l = 0; l < width; ++l) {
            if (flags[l]) {
              apply_bound(slots[l], classify(considered_at(lanes[l], k),
                                             lines[l], tol));
              ++res.lane_wu[l];
              if (cfg.record_iterations) ++rec.lane_wu[l];
            } else {
              ++idle;
            }
          }
        }
      }
      // Barrier: all units folded before any violated lane reads its slot.
      for (const std::uint32_t l : active) {
        const solution on_line =
            resolve_on_line(lines[l], slots[l], lanes[l].prob->obj, tol);
        if (on_line.feasible) {
          lanes[l].point = on_line.point;
        } else {
          lanes[l].infeasible = true;
        }
      }
    }
    res.idle_wu_steps += idle;

    if (cfg.record_iterations) {
      rec.wu_count = wu_count;
      rec.idle_steps = idle;
      res.iterations.push_back(std::move(rec));
    }

    bool any_left = false;
    for (const block_lane& lane : lanes) {
      if (lane.live && !lane.infeasible && lane.m > iter) {
        any_left = true;
        break;
      }
    }
    if (!any_left) break;
  }

  for (std::size_t l = 0; l < count; ++l) {
    const block_lane& lane = lanes[l];
    out[first + l] =
        lane.infeasible
            ? solution::infeasible()
            : solution::optimal(lane.point,
                                objective_value(lane.prob->obj, lane.point));
  }
}

}  // namespace detail

struct batch_result {
  std::vector<solution> solutions;
  lane_stats stats;
};

inline batch_result solve_batch(const batch& b, const block_config& cfg = {},
                                const tolerance& tol = {}) {
  const std::size_t n = b.problems.size();
  if (n == 0) throw std::invalid_argument("solve_batch: empty batch");
  if (b.permutations.size() != n) {
    throw std::invalid_argument(
        "solve_batch: one permutation per problem required");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (b.permutations[i].order.size() != b.problems[i].constraints.size()) {
      throw std::invalid_argument(
          "solve_batch: permutation length does not match problem size");
    }
  }
  if (cfg.block_width == 0) {
    throw std::invalid_argument("solve_batch: block width must be positive");
  }

  const std::size_t width = cfg.block_width;
  const std::size_t nblocks = (n + width - 1) / width;
  batch_result result;
  result.solutions.resize(n);
  std::vector<detail::block_result> per_block(nblocks);

  const auto run_one = [&](std::size_t blk) {
    const std::size_t first = blk * width;
    const std::size_t count = std::min(width, n - first);
    detail::run_block(b.problems, b.permutations, first, count, cfg, tol,
                      result.solutions, per_block[blk],
                      static_cast<std::uint32_t>(blk));
  };

  unsigned workers = cfg.workers ? cfg.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(nblocks)));
  if (workers == 1) {
    for (std::size_t blk = 0; blk < nblocks; ++blk) run_one(blk);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t blk = next.fetch_add(1); blk < nblocks;
             blk = next.fetch_add(1)) {
          run_one(blk);
        }
      });
    }
  }

  // Merge per-block results in block order; identical no matter which worker
  // ran which block.
  lane_stats& stats = result.stats;
  stats.block_width = width;
  stats.blocks = nblocks;
  stats.lane_wu.reserve(nblocks * width);
  for (detail::block_result& res : per_block) {
    stats.lane_wu.insert(stats.lane_wu.end(), res.lane_wu.begin(),
                         res.lane_wu.end());
    stats.violation_events += res.violation_events;
    stats.masked_lane_iterations += res.masked_lane_iterations;
    stats.idle_wu_steps += res.idle_wu_steps;
    for (iteration_record& rec : res.iterations) {
      stats.iterations.push_back(std::move(rec));
    }
  }
  for (const std::uint64_t wu : stats.lane_wu) stats.total_wu += wu;
  return result;
}

}  // namespace lp2d
