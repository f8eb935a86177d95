#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

// Segmented min/max reductions under three update disciplines. They model
// the ways concurrent lanes can combine their classifications into a shared
// interval: one serialized stream of updates, a pairwise tree, or private
// partials merged at the end. All three compute identical results because
// min and max are exact; only their memory traffic patterns differ, which is
// what the contention benchmark measures.

namespace lp2d {

enum class reduce_strategy : std::uint8_t {
  serialized_shared_update,
  tree_reduction,
  private_then_merge,
};

inline const char* to_string(reduce_strategy s) {
  switch (s) {
    case reduce_strategy::serialized_shared_update:
      return "serialized-shared-update";
    case reduce_strategy::tree_reduction:
      return "tree-reduction";
    case reduce_strategy::private_then_merge:
      return "per-lane-private-then-merge";
  }
  return "?";
}

namespace detail {

/// Lanes a private-partial reduction uses per group.
inline constexpr std::size_t private_lanes_cap = 32;

}  // namespace detail

/// Reduce each consecutive group of `contention` values in `in` to its
/// minimum and maximum. `contention` is the number of values funneled into
/// one shared result, the knob the contention benchmark turns.
inline void segmented_extremes(std::span<const double> in,
                               std::size_t contention,
                               reduce_strategy strategy,
                               std::span<double> out_min,
                               std::span<double> out_max) {
  if (contention == 0) {
    throw std::invalid_argument("segmented_extremes: contention must be >= 1");
  }
  if (in.size() % contention != 0) {
    throw std::invalid_argument(
        "segmented_extremes: input size must be a multiple of contention");
  }
  const std::size_t groups = in.size() / contention;
  if (out_min.size() != groups || out_max.size() != groups) {
    throw std::invalid_argument("segmented_extremes: bad output size");
  }

  switch (strategy) {
    case reduce_strategy::serialized_shared_update: {
      for (std::size_t g = 0; g < groups; ++g) {
        const double* v = in.data() + g * contention;
        double mn = v[0];
        double mx = v[0];
        for (std::size_t i = 1; i < contention; ++i) {
          mn = std::fmin(mn, v[i]);
          mx = std::fmax(mx, v[i]);
        }
        out_min[g] = mn;
        out_max[g] = mx;
      }
      break;
    }
    case reduce_strategy::tree_reduction: {
      // Halving strides over a scratch copy, the classic in-place tree. The
      // stride starts at the padded power of two so odd tails pair up too.
      std::vector<double> mn(contention);
      std::vector<double> mx(contention);
      for (std::size_t g = 0; g < groups; ++g) {
        const double* v = in.data() + g * contention;
        for (std::size_t i = 0; i < contention; ++i) mn[i] = mx[i] = v[i];
        for (std::size_t stride = std::bit_ceil(contention) / 2; stride >= 1;
             stride /= 2) {
          for (std::size_t i = 0; i < stride; ++i) {
            if (i + stride < contention) {
              mn[i] = std::fmin(mn[i], mn[i + stride]);
              mx[i] = std::fmax(mx[i], mx[i + stride]);
            }
          }
          if (stride == 1) break;
        }
        out_min[g] = mn[0];
        out_max[g] = mx[0];
      }
      break;
    }
    case reduce_strategy::private_then_merge: {
      const std::size_t lanes = std::min(contention, detail::private_lanes_cap);
      std::vector<double> mn(lanes);
      std::vector<double> mx(lanes);
      for (std::size_t g = 0; g < groups; ++g) {
        const double* v = in.data() + g * contention;
        for (std::size_t l = 0; l < lanes; ++l) {
          double pmn = v[l];
          double pmx = v[l];
          for (std::size_t i = l + lanes; i < contention; i += lanes) {
            pmn = std::fmin(pmn, v[i]);
            pmx = std::fmax(pmx, v[i]);
          }
          mn[l] = pmn;
          mx[l] = pmx;
        }
        double gmn = mn[0];
        double gmx = mx[0];
        for (std::size_t l = 1; l < lanes; ++l) {
          gmn = std::fmin(gmn, mn[l]);
          gmx = std::fmax(gmx, mx[l]);
        }
        out_min[g] = gmn;
        out_max[g] = gmx;
      }
      break;
    }
  }
}

}  // namespace lp2d
