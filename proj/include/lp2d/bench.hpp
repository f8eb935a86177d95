#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "batch.hpp"
#include "generate.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "reduction.hpp"
#include "rng.hpp"
#include "serial.hpp"

// Benchmark sweeps, cross-solver verification and record emission; the CLI
// in tools/ is a thin argument parser over this header. Every run is a raw
// record (no aggregation here), and everything except wall time is a pure
// function of the seed.

namespace lp2d::bench {

enum class algorithm_kind : std::uint8_t { serial, naive, balanced, oracle };

inline const char* to_string(algorithm_kind a) {
  switch (a) {
    case algorithm_kind::serial: return "serial";
    case algorithm_kind::naive: return "naive";
    case algorithm_kind::balanced: return "balanced";
    case algorithm_kind::oracle: return "oracle";
  }
  return "?";
}

/// One timed solve of one batch configuration by one algorithm.
struct run_record {
  std::uint64_t run_id = 0;
  algorithm_kind algorithm = algorithm_kind::serial;
  std::size_t batch = 0;        ///< problems in the batch
  std::size_t lp_size = 0;      ///< constraints per problem
  std::uint64_t seed = 0;       ///< instance seed (derived, reproducible)
  std::int64_t wall_time_ns = 0;
  std::uint64_t work_units = 0;
  std::uint64_t violation_events = 0;
  double imbalance = 1.0;       ///< max/mean lane work; 1.0 where N/A
  double value_checksum = 0.0;  ///< sum of optimal values, infeasible adds 0
};

struct sweep_options {
  std::size_t block_width = 512;
  bool run_serial = true;
  bool run_naive = true;
  bool run_balanced = true;
  bool with_oracle = false;
  unsigned workers = 0;
  std::size_t reps = 3;
  std::uint64_t seed = 1;
};

namespace detail {

using steady = std::chrono::steady_clock;

inline std::int64_t elapsed_ns(steady::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(steady::now() -
                                                              t0)
      .count();
}

inline double checksum(std::span<const solution> sols) {
  double sum = 0.0;
  for (const solution& s : sols) {
    if (s.feasible) sum += s.value;
  }
  return sum;
}

/// Timed region: solving plus result write-back. Generation, permutation
/// setup and checksumming stay outside.
inline run_record time_serial(const batch& b, const tolerance& tol) {
  run_record rec;
  rec.algorithm = algorithm_kind::serial;
  std::vector<solution> sols(b.problems.size());
  solve_stats stats;
  const auto t0 = steady::now();
  for (std::size_t i = 0; i < b.problems.size(); ++i) {
    sols[i] = solve(b.problems[i], b.permutations[i], tol, &stats);
  }
  rec.wall_time_ns = elapsed_ns(t0);
  rec.work_units = stats.work_units;
  rec.violation_events = stats.violation_events;
  rec.value_checksum = checksum(sols);
  return rec;
}

inline run_record time_batch(const batch& b, scheduler_kind sched,
                             const sweep_options& opts, const tolerance& tol) {
  run_record rec;
  rec.algorithm = sched == scheduler_kind::naive ? algorithm_kind::naive
                                                 : algorithm_kind::balanced;
  block_config cfg;
  cfg.block_width = opts.block_width;
  cfg.scheduler = sched;
  cfg.workers = opts.workers;
  const auto t0 = steady::now();
  const batch_result result = solve_batch(b, cfg, tol);
  rec.wall_time_ns = elapsed_ns(t0);
  rec.work_units = result.stats.total_wu;
  rec.violation_events = result.stats.violation_events;
  rec.imbalance =
      result.stats.total_wu ? lane_imbalance(result.stats) : 1.0;
  rec.value_checksum = checksum(result.solutions);
  return rec;
}

inline run_record time_oracle(const batch& b, const tolerance& tol) {
  run_record rec;
  rec.algorithm = algorithm_kind::oracle;
  std::vector<solution> sols(b.problems.size());
  const auto t0 = steady::now();
  for (std::size_t i = 0; i < b.problems.size(); ++i) {
    sols[i] = solve_bruteforce(b.problems[i], tol);
  }
  rec.wall_time_ns = elapsed_ns(t0);
  rec.value_checksum = checksum(sols);
  return rec;
}

inline void run_config(std::vector<run_record>& out, std::uint64_t& next_id,
                       std::size_t batch_count, std::size_t lp_size,
                       std::uint64_t instance_seed, const sweep_options& opts,
                       const tolerance& tol) {
  const problem base = gen({lp_size, instance_seed});
  const batch b = replicate(base, batch_count, derive_seed(instance_seed, 1));

  const auto push = [&](run_record rec) {
    rec.run_id = next_id++;
    rec.batch = batch_count;
    rec.lp_size = lp_size;
    rec.seed = instance_seed;
    out.push_back(rec);
  };
  if (opts.run_serial) push(time_serial(b, tol));
  if (opts.run_naive) push(time_batch(b, scheduler_kind::naive, opts, tol));
  if (opts.run_balanced) {
    push(time_batch(b, scheduler_kind::balanced, opts, tol));
  }
  if (opts.with_oracle) push(time_oracle(b, tol));
}

}  // namespace detail

/// Fixed batch size, sweep over problem sizes.
inline std::vector<run_record> sweep_size(std::size_t batch_count,
                                          std::span<const std::size_t> sizes,
                                          const sweep_options& opts,
                                          const tolerance& tol = {}) {
  std::vector<run_record> out;
  std::uint64_t next_id = 1;
  std::uint64_t config = 0;
  for (const std::size_t size : sizes) {
    for (std::size_t rep = 0; rep < opts.reps; ++rep) {
      detail::run_config(out, next_id, batch_count, size,
                         derive_seed(opts.seed, config++), opts, tol);
    }
  }
  return out;
}

/// Fixed problem size, sweep over batch sizes.
inline std::vector<run_record> sweep_batch(std::size_t lp_size,
                                           std::span<const std::size_t> batches,
                                           const sweep_options& opts,
                                           const tolerance& tol = {}) {
  std::vector<run_record> out;
  std::uint64_t next_id = 1;
  std::uint64_t config = 0;
  for (const std::size_t batch_count : batches) {
    for (std::size_t rep = 0; rep < opts.reps; ++rep) {
      detail::run_config(out, next_id, batch_count, lp_size,
                         derive_seed(opts.seed, config++), opts, tol);
    }
  }
  return out;
}

/// Naive over balanced wall time for every (batch, size, seed) configuration
/// present in records; configurations missing one side stay incomplete and
/// print as a gap.
struct speedup_row {
  std::size_t batch = 0;
  std::size_t lp_size = 0;
  std::uint64_t seed = 0;
  std::int64_t naive_ns = 0;
  std::int64_t balanced_ns = 0;
  bool have_naive = false;
  bool have_balanced = false;

  bool complete() const { return have_naive && have_balanced && balanced_ns > 0; }
  double ratio() const {
    return static_cast<double>(naive_ns) / static_cast<double>(balanced_ns);
  }
};

inline std::vector<speedup_row> relative_speedup(
    std::span<const run_record> records) {
  std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, speedup_row>
      rows;
  for (const run_record& rec : records) {
    if (rec.algorithm != algorithm_kind::naive &&
        rec.algorithm != algorithm_kind::balanced) {
      continue;
    }
    speedup_row& row = rows[{rec.batch, rec.lp_size, rec.seed}];
    row.batch = rec.batch;
    row.lp_size = rec.lp_size;
    row.seed = rec.seed;
    if (rec.algorithm == algorithm_kind::naive) {
      row.naive_ns += rec.wall_time_ns;
      row.have_naive = true;
    } else {
      row.balanced_ns += rec.wall_time_ns;
      row.have_balanced = true;
    }
  }
  std::vector<speedup_row> out;
  out.reserve(rows.size());
  for (auto& [key, row] : rows) out.push_back(row);
  return out;
}

/// One timed segmented reduction pass.
struct contention_record {
  reduce_strategy strategy = reduce_strategy::serialized_shared_update;
  std::size_t contention = 0;
  std::int64_t wall_time_ns = 0;
};

inline std::vector<contention_record> contention_bench(
    std::span<const reduce_strategy> strategies,
    std::span<const std::size_t> contentions, std::size_t reps,
    std::uint64_t seed, std::size_t values = 512 * 2048) {
  for (const std::size_t c : contentions) {
    if (c == 0 || c > 512 || (c & (c - 1)) != 0) {
      throw std::invalid_argument(
          "contention_bench: contention levels must be powers of two in "
          "[1, 512]");
    }
  }
  std::vector<double> in(values);
  xoshiro256pp rng(derive_seed(seed, 0xC0));
  for (double& v : in) v = rng.in_range(-1e6, 1e6);

  std::vector<contention_record> out;
  std::vector<double> mins(values);
  std::vector<double> maxs(values);
  for (const std::size_t c : contentions) {
    const std::size_t groups = values / c;
    for (const reduce_strategy s : strategies) {
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto t0 = detail::steady::now();
        segmented_extremes(in, c, s, std::span(mins).first(groups),
                           std::span(maxs).first(groups));
        out.push_back({s, c, detail::elapsed_ns(t0)});
      }
    }
  }
  return out;
}

/// Cross-solver agreement check. Instances are drawn from the seed (sizes
/// uniform in [1, max_size], every fourth instance infeasible by
/// construction), solved by the oracle and the serial solver one by one and
/// by both schedulers as a single mixed-size batch, then compared: verdicts
/// must match everywhere, serial/naive/balanced must agree bit for bit, and
/// the oracle must agree to tolerance.sig_figs significant figures. Every
/// disagreement is dumped in `lp2d v1` form for replay.
struct verify_report {
  std::size_t instances = 0;
  std::size_t disagreements = 0;
  std::vector<std::string> failures;

  bool ok() const { return disagreements == 0; }
};

inline verify_report verify(std::size_t count, std::size_t max_size,
                            const sweep_options& opts,
                            const tolerance& tol = {},
                            std::ostream* log = nullptr) {
  if (max_size > oracle_cap) {
    throw std::invalid_argument("verify: max size above the oracle cap");
  }
  if (count == 0 || max_size == 0) {
    throw std::invalid_argument("verify: count and max size must be positive");
  }

  batch b;
  b.problems.reserve(count);
  b.permutations.reserve(count);
  xoshiro256pp size_rng(derive_seed(opts.seed, 0xA0));
  for (std::size_t i = 0; i < count; ++i) {
    gen_spec spec;
    spec.m = 1 + static_cast<std::size_t>(size_rng.below(max_size));
    spec.seed = derive_seed(opts.seed, 2 * i);
    spec.kind = (i % 4 == 3) ? gen_kind::infeasible : gen_kind::feasible_random;
    b.problems.push_back(gen(spec));
    b.permutations.push_back(shuffle(spec.m, derive_seed(opts.seed, 2 * i + 1)));
  }

  block_config cfg;
  cfg.block_width = opts.block_width;
  cfg.workers = opts.workers;
  cfg.scheduler = scheduler_kind::naive;
  const batch_result by_naive = solve_batch(b, cfg, tol);
  cfg.scheduler = scheduler_kind::balanced;
  const batch_result by_balanced = solve_batch(b, cfg, tol);

  verify_report report;
  report.instances = count;
  for (std::size_t i = 0; i < count; ++i) {
    const problem& p = b.problems[i];
    const solution serial = solve(p, b.permutations[i], tol);
    const solution oracle = solve_bruteforce(p, tol);
    const solution& naive = by_naive.solutions[i];
    const solution& balanced = by_balanced.solutions[i];

    std::string why;
    if (naive != serial) {
      why = "naive scheduler differs from serial";
    } else if (balanced != serial) {
      why = "balanced scheduler differs from serial";
    } else if (oracle.feasible != serial.feasible) {
      why = "oracle and serial disagree on feasibility";
    } else if (serial.feasible &&
               !agree_sig_figs(serial.value, oracle.value, tol.sig_figs)) {
      why = "oracle and serial values disagree";
    } else if (serial.feasible) {
      for (const half_plane& h : p.constraints) {
        if (!satisfied(h, serial.point, tol)) {
          why = "reported optimum violates a constraint";
          break;
        }
      }
    }

    if (log && count == 1) {
      *log << to_text(p);
      const auto show = [&](const char* name, const solution& s) {
        *log << name << ": ";
        if (s.feasible) {
          char buf[96];
          std::snprintf(buf, sizeof buf, "(%.17g, %.17g) value %.17g",
                        s.point.x, s.point.y, s.value);
          *log << buf << "\n";
        } else {
          *log << "infeasible\n";
        }
      };
      show("oracle", oracle);
      show("serial", serial);
      show("naive", naive);
      show("balanced", balanced);
    }

    if (!why.empty()) {
      report.disagreements += 1;
      std::string dump = "instance " + std::to_string(i) + ": " + why + "\n";
      dump += to_text(p);
      report.failures.push_back(std::move(dump));
    }
  }
  return report;
}

// Record emission. CSV keeps one fixed header per record type; JSONL mirrors
// the same fields one object per line. Doubles print with %.17g so identical
// runs emit identical bytes.

inline constexpr const char* run_record_csv_header =
    "run_id,algorithm,batch,lp_size,seed,wall_time_ns,work_units,"
    "violation_events,imbalance,value_checksum";

namespace detail {

inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline void write_csv(std::ostream& os, std::span<const run_record> records,
                      bool header = true) {
  if (header) os << run_record_csv_header << "\n";
  for (const run_record& r : records) {
    os << r.run_id << "," << to_string(r.algorithm) << "," << r.batch << ","
       << r.lp_size << "," << r.seed << "," << r.wall_time_ns << ","
       << r.work_units << "," << r.violation_events << ","
       << detail::g17(r.imbalance) << "," << detail::g17(r.value_checksum)
       << "\n";
  }
}

inline void write_jsonl(std::ostream& os, std::span<const run_record> records) {
  for (const run_record& r : records) {
    os << "{\"run_id\":" << r.run_id << ",\"algorithm\":\""
       << to_string(r.algorithm) << "\",\"batch\":" << r.batch
       << ",\"lp_size\":" << r.lp_size << ",\"seed\":" << r.seed
       << ",\"wall_time_ns\":" << r.wall_time_ns
       << ",\"work_units\":" << r.work_units
       << ",\"violation_events\":" << r.violation_events
       << ",\"imbalance\":" << detail::g17(r.imbalance)
       << ",\"value_checksum\":" << detail::g17(r.value_checksum) << "}\n";
  }
}

inline constexpr const char* speedup_csv_header =
    "batch,lp_size,seed,naive_ns,balanced_ns,ratio";

inline void write_csv(std::ostream& os, std::span<const speedup_row> rows,
                      bool header = true) {
  if (header) os << speedup_csv_header << "\n";
  for (const speedup_row& row : rows) {
    os << row.batch << "," << row.lp_size << "," << row.seed << ",";
    if (row.have_naive) os << row.naive_ns;
    os << ",";
    if (row.have_balanced) os << row.balanced_ns;
    os << ",";
    // Incomplete pairs keep an explicit gap instead of a fake ratio.
    os << (row.complete() ? detail::g17(row.ratio()) : "NA") << "\n";
  }
}

inline void write_jsonl(std::ostream& os, std::span<const speedup_row> rows) {
  for (const speedup_row& row : rows) {
    os << "{\"batch\":" << row.batch << ",\"lp_size\":" << row.lp_size
       << ",\"seed\":" << row.seed << ",\"naive_ns\":";
    if (row.have_naive) {
      os << row.naive_ns;
    } else {
      os << "null";
    }
    os << ",\"balanced_ns\":";
    if (row.have_balanced) {
      os << row.balanced_ns;
    } else {
      os << "null";
    }
    os << ",\"ratio\":";
    if (row.complete()) {
      os << detail::g17(row.ratio());
    } else {
      os << "null";
    }
    os << "}\n";
  }
}

inline constexpr const char* contention_csv_header =
    "strategy,contention,wall_time_ns";

inline void write_csv(std::ostream& os,
                      std::span<const contention_record> records,
                      bool header = true) {
  if (header) os << contention_csv_header << "\n";
  for (const contention_record& r : records) {
    os << to_string(r.strategy) << "," << r.contention << ","
       << r.wall_time_ns << "\n";
  }
}

inline void write_jsonl(std::ostream& os,
                        std::span<const contention_record> records) {
  for (const contention_record& r : records) {
    os << "{\"strategy\":\"" << to_string(r.strategy)
       << "\",\"contention\":" << r.contention
       << ",\"wall_time_ns\":" << r.wall_time_ns << "}\n";
  }
}

}  // namespace lp2d::bench
