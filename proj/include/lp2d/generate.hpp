#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "batch.hpp"
#include "core.hpp"
#include "rng.hpp"
#include "serial.hpp"

// Seeded instance generators. Three families:
//
//  feasible_random      unit normals at random angles, each bound backed off
//                       from a hidden interior point, so feasibility is known
//                       by construction;
//  infeasible           a feasible_random base plus one constraint that
//                       excludes the entire box;
//  adversarial_ordered  a funnel of alternating tilted cuts with strictly
//                       decreasing heights, built so that inserting the
//                       constraints in file order violates the running
//                       optimum at every single step.

namespace lp2d {

enum class gen_kind : std::uint8_t {
  feasible_random,
  infeasible,
  adversarial_ordered,
};

inline const char* to_string(gen_kind k) {
  switch (k) {
    case gen_kind::feasible_random: return "feasible_random";
    case gen_kind::infeasible: return "infeasible";
    case gen_kind::adversarial_ordered: return "adversarial_ordered";
  }
  return "?";
}

struct gen_spec {
  std::size_t m = 1;
  std::uint64_t seed = 0;
  gen_kind kind = gen_kind::feasible_random;
  /// Distance scale by which feasible instances back their bounds off the
  /// interior point, and the step scale of the adversarial funnel.
  double interior_margin = 1.0;
};

/// adversarial_ordered is rejected above this size: construction is
/// quadratic (every step re-solves a growing 1D program to certify the
/// violation chain) and loses its point at benchmark scales anyway.
inline constexpr std::size_t adversarial_cap = 8192;

namespace detail {

inline problem gen_feasible_random(std::size_t m, xoshiro256pp& rng,
                                   double margin, vec2* witness) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  problem p;
  const double phi = two_pi * rng.unit();
  p.obj.c = {std::cos(phi), std::sin(phi)};

  const double half = p.bound_m / 2.0;
  const vec2 interior = {rng.in_range(-half, half), rng.in_range(-half, half)};
  if (witness) *witness = interior;

  p.constraints.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double theta = two_pi * rng.unit();
    const vec2 a = {std::cos(theta), std::sin(theta)};
    const double slack = margin * (1.0 + 9.0 * rng.unit());
    p.constraints.push_back({a, dot(a, interior) + slack});
  }
  return p;
}

inline problem gen_infeasible(std::size_t m, xoshiro256pp& rng, double margin,
                              vec2* witness) {
  problem p = gen_feasible_random(m - 1, rng, margin, witness);
  // One constraint no point of the box can satisfy: the bound sits strictly
  // below the minimum of a.x over the whole box.
  const double theta = 2.0 * std::numbers::pi * rng.unit();
  const vec2 a = {std::cos(theta), std::sin(theta)};
  const double box_min = -(std::fabs(a.x) + std::fabs(a.y)) * p.bound_m;
  p.constraints.push_back({a, box_min - 1.0});
  return p;
}

inline problem gen_adversarial_ordered(std::size_t m, xoshiro256pp& rng,
                                       double margin) {
  if (m > adversarial_cap) {
    throw std::invalid_argument(
        "gen: adversarial_ordered instances are capped at 8192 constraints");
  }
  constexpr double deg = std::numbers::pi / 180.0;
  problem p;
  p.obj.c = {0.0, 1.0};
  p.constraints.reserve(m);

  std::vector<half_plane> considered;
  considered.reserve(m + 4);
  const auto box = box_constraints(p.bound_m);
  considered.insert(considered.end(), box.begin(), box.end());

  const tolerance tol{};
  vec2 x = initial_optimum(p.obj, p.bound_m);
  double height = 0.0;

  for (std::size_t k = 0; k < m; ++k) {
    if (k > 0) height -= margin * rng.in_range(0.8, 1.2);
    const double theta = rng.in_range(20.0 * deg, 40.0 * deg);
    // Tilt alternates sides so each cut passes in front of the previous
    // vertex instead of behind it.
    const double side = (k % 2 == 0) ? -1.0 : 1.0;
    const vec2 a = {side * std::sin(theta), std::cos(theta)};
    const half_plane h = {a, a.y * height};

    // Certify the chain as it is built: the constraint must displace the
    // current optimum, and the funnel must stay feasible.
    if (satisfied(h, x, tol)) {
      throw std::runtime_error("gen: adversarial construction lost the chain");
    }
    const solution on_line = solve_1d(boundary_of(h), considered, p.obj, tol);
    if (!on_line.feasible) {
      throw std::runtime_error("gen: adversarial construction went infeasible");
    }
    x = on_line.point;
    considered.push_back(h);
    p.constraints.push_back(h);
  }
  return p;
}

}  // namespace detail

/// Generate one instance. For feasible_random (and the feasible base of
/// infeasible) the hidden interior point is reported through witness when
/// given; the other kinds leave it untouched.
inline problem gen(const gen_spec& spec, vec2* witness = nullptr) {
  xoshiro256pp rng(spec.seed);
  switch (spec.kind) {
    case gen_kind::feasible_random:
      return detail::gen_feasible_random(spec.m, rng, spec.interior_margin,
                                         witness);
    case gen_kind::infeasible:
      return detail::gen_infeasible(spec.m, rng, spec.interior_margin, witness);
    case gen_kind::adversarial_ordered:
      return detail::gen_adversarial_ordered(spec.m, rng, spec.interior_margin);
  }
  throw std::invalid_argument("gen: unknown kind");
}

/// Batch of count copies of one instance, each copy with its own seeded
/// insertion order.
inline batch replicate(const problem& p, std::size_t count,
                       std::uint64_t perm_seed) {
  batch b;
  b.problems.assign(count, p);
  b.permutations.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    b.permutations.push_back(
        shuffle(p.constraints.size(), derive_seed(perm_seed, i)));
  }
  return b;
}

/// Batch of count fresh instances cycling through the given sizes lane by
/// lane; the way to put deliberately unequal amounts of work side by side in
/// one block.
inline batch gen_mixed(std::span<const std::size_t> sizes, std::size_t count,
                       std::uint64_t seed,
                       gen_kind kind = gen_kind::feasible_random,
                       double margin = 1.0) {
  if (sizes.empty()) throw std::invalid_argument("gen_mixed: no sizes");
  batch b;
  b.problems.reserve(count);
  b.permutations.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const gen_spec spec{sizes[i % sizes.size()], derive_seed(seed, 2 * i), kind,
                        margin};
    b.problems.push_back(gen(spec));
    b.permutations.push_back(shuffle(spec.m, derive_seed(seed, 2 * i + 1)));
  }
  return b;
}

}  // namespace lp2d
