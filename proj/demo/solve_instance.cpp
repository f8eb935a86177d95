// Minimal library walkthrough: read an `lp2d v1` instance from a file (or
// stdin), solve it serially under a seeded random order, and show how the
// same problem runs through a batch block. Pairs with `lp2d-bench gen`:
//
//   lp2d-bench gen --m 64 --seed 9 --out funnel.lp2d
//   solve_instance funnel.lp2d

#include <cstdio>
#include <fstream>
#include <iostream>

#include "lp2d/lp2d.hpp"

int main(int argc, char** argv) {
  lp2d::problem p;
  try {
    if (argc > 1) {
      std::ifstream in(argv[1]);
      if (!in) {
        std::fprintf(stderr, "cannot open %s\n", argv[1]);
        return 1;
      }
      p = lp2d::read_problem(in);
    } else {
      p = lp2d::read_problem(std::cin);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }

  const std::size_t m = p.constraints.size();
  std::printf("instance: %zu constraints, box half-width %g\n", m, p.bound_m);

  lp2d::solve_stats stats;
  const lp2d::solution s =
      lp2d::solve(p, lp2d::shuffle(m, 1), {}, &stats);
  if (!s.feasible) {
    std::printf("infeasible (detected after %llu violations)\n",
                static_cast<unsigned long long>(stats.violation_events));
    return 0;
  }
  std::printf("optimum %.12g at (%.12g, %.12g)\n", s.value, s.point.x,
              s.point.y);
  std::printf("violations %llu, classifications %llu\n",
              static_cast<unsigned long long>(stats.violation_events),
              static_cast<unsigned long long>(stats.work_units));

  // The same instance, eight copies with independent orders, one block.
  const lp2d::batch b = lp2d::replicate(p, 8, 7);
  lp2d::block_config cfg;
  cfg.block_width = 8;
  const lp2d::batch_result r = lp2d::solve_batch(b, cfg);
  bool agree = true;
  for (const lp2d::solution& sol : r.solutions) {
    agree = agree && sol.feasible == s.feasible &&
            (!sol.feasible || lp2d::agree_sig_figs(sol.value, s.value, 5));
  }
  std::printf("batch of 8 orders: lane imbalance %.3f, values %s\n",
              r.stats.total_wu ? lp2d::lane_imbalance(r.stats) : 1.0,
              agree ? "agree to 5 figures" : "DISAGREE");
  return 0;
}
