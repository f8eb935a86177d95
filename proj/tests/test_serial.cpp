#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "lp2d/core.hpp"
#include "lp2d/rng.hpp"
#include "lp2d/serial.hpp"

using namespace lp2d;

namespace {

const tolerance tol{};

std::vector<half_plane> box_list(double bound_m) {
  const auto box = box_constraints(bound_m);
  return {box.begin(), box.end()};
}

}  // namespace

TEST_CASE("initial optimum sits on the box corner preferred by c") {
  CHECK(initial_optimum({{1.0, 1.0}}, 10.0) == vec2{10.0, 10.0});
  CHECK(initial_optimum({{-2.0, 3.0}}, 10.0) == vec2{-10.0, 10.0});
  // A zero component ties toward +M.
  CHECK(initial_optimum({{1.0, 0.0}}, 10.0) == vec2{10.0, 10.0});
}

TEST_CASE("solve_1d walks the feasible segment to the preferred end") {
  const boundary_line l = boundary_of({{0.0, 1.0}, 1.0});  // the line y = 1
  const objective c{{1.0, 1.0}};

  // Box only: the segment spans the box, and c prefers large x.
  std::vector<half_plane> considered = box_list(10.0);
  solution s = solve_1d(l, considered, c, tol);
  REQUIRE(s.feasible);
  CHECK(s.point == vec2{10.0, 1.0});

  // x <= 2 tightens the good end.
  considered.push_back({{1.0, 0.0}, 2.0});
  s = solve_1d(l, considered, c, tol);
  REQUIRE(s.feasible);
  CHECK(s.point == vec2{2.0, 1.0});
}

TEST_CASE("solve_1d reports an empty segment") {
  const boundary_line l = boundary_of({{0.0, 1.0}, 1.0});
  std::vector<half_plane> considered = box_list(10.0);
  considered.push_back({{1.0, 0.0}, 0.0});    // x <= 0
  considered.push_back({{-1.0, 0.0}, -1.0});  // x >= 1
  const solution s = solve_1d(l, considered, {{1.0, 1.0}}, tol);
  CHECK(!s.feasible);
}

TEST_CASE("solve finds the corner of two crossing constraints") {
  problem p;
  p.obj.c = {1.0, 1.0};
  p.bound_m = 10.0;
  p.constraints = {{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}};
  const solution s = solve(p, identity_permutation(2), tol);
  REQUIRE(s.feasible);
  CHECK(s.point == vec2{1.0, 1.0});
  CHECK(s.value == 2.0);
}

TEST_CASE("solve without constraints reports the box corner") {
  problem p;
  p.obj.c = {1.0, 1.0};
  p.bound_m = 10.0;
  const solution s = solve(p, identity_permutation(0), tol);
  REQUIRE(s.feasible);
  CHECK(s.point == vec2{10.0, 10.0});
}

TEST_CASE("solve detects contradictory constraints") {
  problem p;
  p.obj.c = {1.0, 1.0};
  p.bound_m = 10.0;
  p.constraints = {{{1.0, 0.0}, 0.0}, {{-1.0, 0.0}, -1.0}};
  for (const auto& perm :
       {identity_permutation(2), shuffle(2, 1), shuffle(2, 2)}) {
    CHECK(!solve(p, perm, tol).feasible);
  }
}

TEST_CASE("intermediate optimum values only ever decrease") {
  xoshiro256pp rng(21);
  for (int instance = 0; instance < 20; ++instance) {
    problem p;
    const double phi = rng.in_range(0.0, 2.0 * M_PI);
    p.obj.c = {std::cos(phi), std::sin(phi)};
    for (int k = 0; k < 64; ++k) {
      const double theta = rng.in_range(0.0, 2.0 * M_PI);
      const vec2 a = {std::cos(theta), std::sin(theta)};
      p.constraints.push_back({a, rng.in_range(1.0, 50.0)});
    }
    solve_trace trace;
    const solution s =
        solve(p, shuffle(64, rng.next()), tol, nullptr, &trace);
    REQUIRE(s.feasible);  // all bounds admit a neighborhood of (0, 0)
    REQUIRE(!trace.values.empty());
    for (std::size_t i = 1; i < trace.values.size(); ++i) {
      CHECK(trace.values[i] <= trace.values[i - 1] + 1e-9);
    }
    CHECK(s.value == trace.values.back());
  }
}

TEST_CASE("solve result does not depend on the insertion order") {
  xoshiro256pp rng(31);
  problem p;
  p.obj.c = {0.3, -0.8};
  for (int k = 0; k < 48; ++k) {
    const double theta = rng.in_range(0.0, 2.0 * M_PI);
    const vec2 a = {std::cos(theta), std::sin(theta)};
    p.constraints.push_back({a, rng.in_range(2.0, 30.0)});
  }
  const solution ref = solve(p, identity_permutation(48), tol);
  REQUIRE(ref.feasible);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const solution s = solve(p, shuffle(48, seed), tol);
    REQUIRE(s.feasible);
    CHECK(agree_sig_figs(ref.value, s.value, tol.sig_figs));
  }
}

TEST_CASE("solve stats count violations and their rescans") {
  problem p;
  p.obj.c = {1.0, 1.0};
  p.bound_m = 10.0;
  p.constraints = {{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}};
  solve_stats stats;
  REQUIRE(solve(p, identity_permutation(2), tol, &stats).feasible);
  // Both constraints displace the corner optimum: the first rescans the 4
  // box constraints, the second those plus the first.
  CHECK(stats.violation_events == 2);
  CHECK(stats.work_units == 4 + 5);
}

TEST_CASE("shuffle is deterministic per seed") {
  const permutation a = shuffle(1000, 5);
  const permutation b = shuffle(1000, 5);
  const permutation c = shuffle(1000, 6);
  CHECK(a.order == b.order);
  CHECK(a.order != c.order);

  // Every element present exactly once.
  std::vector<bool> seen(1000, false);
  for (const auto idx : a.order) {
    REQUIRE(idx < 1000);
    CHECK(!seen[idx]);
    seen[idx] = true;
  }
}

TEST_CASE("shuffle places elements uniformly") {
  // Chi-square on the bucketed value at a handful of fixed positions, 1000
  // seeded shuffles of 10000 elements into 16 buckets. Threshold is
  // mean + three standard deviations of the chi-square distribution with 15
  // degrees of freedom; the fixed seed keeps the test deterministic.
  constexpr std::size_t m = 10000;
  constexpr std::size_t buckets = 16;
  constexpr std::size_t shuffles = 1000;
  constexpr double threshold = 15.0 + 3.0 * 5.477225575051661;  // 15 + 3*sqrt(30)

  const std::array<std::size_t, 4> positions = {0, 1, 4999, 9999};
  std::array<std::array<std::size_t, buckets>, positions.size()> counts{};
  for (std::size_t seed = 0; seed < shuffles; ++seed) {
    const permutation perm = shuffle(m, 1000 + seed);
    for (std::size_t pi = 0; pi < positions.size(); ++pi) {
      counts[pi][perm.order[positions[pi]] / (m / buckets)] += 1;
    }
  }
  const double expected = static_cast<double>(shuffles) / buckets;
  for (std::size_t pi = 0; pi < positions.size(); ++pi) {
    double chi2 = 0.0;
    for (const std::size_t count : counts[pi]) {
      const double diff = static_cast<double>(count) - expected;
      chi2 += diff * diff / expected;
    }
    INFO("position " << positions[pi] << " chi2 " << chi2);
    CHECK(chi2 <= threshold);
  }
}
