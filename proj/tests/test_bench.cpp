#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <chrono>
#include <sstream>
#include <utility>
#include <vector>

#include "lp2d/bench.hpp"

using namespace lp2d;
using namespace lp2d::bench;

namespace {

sweep_options small_opts() {
  sweep_options opts;
  opts.block_width = 32;
  opts.reps = 2;
  opts.seed = 712;
  opts.workers = 1;
  return opts;
}

}  // namespace

TEST_CASE("size sweeps emit one record per configuration and algorithm") {
  const std::array<std::size_t, 2> sizes = {16, 48};
  const auto records = sweep_size(24, sizes, small_opts());
  REQUIRE(records.size() == 2 * 2 * 3);  // sizes x reps x algorithms

  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].run_id == i + 1);
    CHECK(records[i].batch == 24);
  }

  // Within one configuration the three algorithms see identical work and
  // agree on the checksum exactly.
  for (std::size_t i = 0; i < records.size(); i += 3) {
    CHECK(records[i].algorithm == algorithm_kind::serial);
    CHECK(records[i + 1].algorithm == algorithm_kind::naive);
    CHECK(records[i + 2].algorithm == algorithm_kind::balanced);
    CHECK(records[i].value_checksum == records[i + 1].value_checksum);
    CHECK(records[i].value_checksum == records[i + 2].value_checksum);
    CHECK(records[i].work_units == records[i + 1].work_units);
    CHECK(records[i].violation_events == records[i + 2].violation_events);
  }
}

TEST_CASE("sweeps are reproducible apart from wall time") {
  const std::array<std::size_t, 1> batches = {16};
  const auto a = sweep_batch(40, batches, small_opts());
  const auto b = sweep_batch(40, batches, small_opts());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].run_id == b[i].run_id);
    CHECK(a[i].algorithm == b[i].algorithm);
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].work_units == b[i].work_units);
    CHECK(a[i].violation_events == b[i].violation_events);
    CHECK(a[i].imbalance == b[i].imbalance);
    CHECK(a[i].value_checksum == b[i].value_checksum);
  }
}

TEST_CASE("relative speedup pairs matching runs and marks gaps") {
  std::vector<run_record> records;
  run_record naive;
  naive.algorithm = algorithm_kind::naive;
  naive.batch = 8;
  naive.lp_size = 100;
  naive.seed = 1;
  naive.wall_time_ns = 300;
  records.push_back(naive);

  run_record balanced = naive;
  balanced.algorithm = algorithm_kind::balanced;
  balanced.wall_time_ns = 100;
  records.push_back(balanced);

  run_record unpaired = naive;
  unpaired.lp_size = 200;
  records.push_back(unpaired);

  const auto rows = relative_speedup(records);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].complete());
  CHECK(rows[0].ratio() == 3.0);
  CHECK(!rows[1].complete());

  std::ostringstream csv;
  write_csv(csv, rows);
  CHECK(csv.str() ==
        "batch,lp_size,seed,naive_ns,balanced_ns,ratio\n"
        "8,100,1,300,100,3\n"
        "8,200,1,300,,NA\n");
}

TEST_CASE("run records serialize to stable csv and jsonl") {
  run_record rec;
  rec.run_id = 7;
  rec.algorithm = algorithm_kind::balanced;
  rec.batch = 512;
  rec.lp_size = 1024;
  rec.seed = 99;
  rec.wall_time_ns = 123456;
  rec.work_units = 1000;
  rec.violation_events = 12;
  rec.imbalance = 1.25;
  rec.value_checksum = -0.5;

  std::ostringstream csv;
  write_csv(csv, std::vector<run_record>{rec});
  CHECK(csv.str() ==
        "run_id,algorithm,batch,lp_size,seed,wall_time_ns,work_units,"
        "violation_events,imbalance,value_checksum\n"
        "7,balanced,512,1024,99,123456,1000,12,1.25,-0.5\n");

  std::ostringstream jsonl;
  write_jsonl(jsonl, std::vector<run_record>{rec});
  CHECK(jsonl.str() ==
        "{\"run_id\":7,\"algorithm\":\"balanced\",\"batch\":512,"
        "\"lp_size\":1024,\"seed\":99,\"wall_time_ns\":123456,"
        "\"work_units\":1000,\"violation_events\":12,\"imbalance\":1.25,"
        "\"value_checksum\":-0.5}\n");
}

TEST_CASE("contention runs cover the requested grid") {
  const std::array<reduce_strategy, 2> strategies = {
      reduce_strategy::serialized_shared_update,
      reduce_strategy::tree_reduction};
  const std::array<std::size_t, 3> levels = {1, 8, 512};
  const auto records = contention_bench(strategies, levels, 2, 5, 512 * 8);
  REQUIRE(records.size() == 2 * 3 * 2);
  for (const contention_record& rec : records) {
    CHECK(rec.wall_time_ns >= 0);
  }

  const std::array<std::size_t, 1> bad = {48};  // not a power of two
  CHECK_THROWS_AS(contention_bench(strategies, bad, 1, 5, 480),
                  std::invalid_argument);
  const std::array<std::size_t, 1> toobig = {1024};
  CHECK_THROWS_AS(contention_bench(strategies, toobig, 1, 5, 2048),
                  std::invalid_argument);
}

TEST_CASE("a minimal sweep emits exactly the three solver records") {
  const std::array<std::size_t, 1> sizes = {64};
  sweep_options opts;
  opts.reps = 1;
  opts.seed = 3;
  const auto records = sweep_size(128, sizes, opts);
  REQUIRE(records.size() == 3);
  CHECK(records[0].algorithm == algorithm_kind::serial);
  CHECK(records[1].algorithm == algorithm_kind::naive);
  CHECK(records[2].algorithm == algorithm_kind::balanced);
  CHECK(records[0].value_checksum == records[1].value_checksum);
  CHECK(records[0].value_checksum == records[2].value_checksum);
}

TEST_CASE("a single-problem batch matches the serial solver") {
  const std::array<std::size_t, 1> batches = {1};
  sweep_options opts;
  opts.reps = 1;
  opts.seed = 17;
  const auto records = sweep_batch(64, batches, opts);
  REQUIRE(records.size() == 3);
  CHECK(records[1].value_checksum == records[0].value_checksum);
  CHECK(records[2].value_checksum == records[0].value_checksum);
  CHECK(records[1].work_units == records[0].work_units);
}

TEST_CASE("a uniform batch offers no imbalance to exploit") {
  // Identical problems in identical insertion order violate in lockstep, so
  // the naive schedule is already the balanced one.
  const problem base = gen({256, 88});
  batch b;
  b.problems.assign(64, base);
  b.permutations.assign(64, shuffle(256, 4));

  block_config cfg;
  cfg.block_width = 64;
  cfg.workers = 1;
  const auto time_once = [&](scheduler_kind sched) {
    cfg.scheduler = sched;
    const auto t0 = std::chrono::steady_clock::now();
    const batch_result r = solve_batch(b, cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return std::pair(secs, lane_imbalance(r.stats));
  };
  // Warm up, then measure interleaved.
  time_once(scheduler_kind::naive);
  double naive_secs = 0.0;
  double balanced_secs = 0.0;
  double naive_imb = 1.0;
  for (int rep = 0; rep < 5; ++rep) {
    const auto [ns, ni] = time_once(scheduler_kind::naive);
    const auto [bs, bi] = time_once(scheduler_kind::balanced);
    naive_secs += ns;
    balanced_secs += bs;
    naive_imb = ni;
    CHECK(bi == 1.0);
  }
  CHECK(naive_imb == 1.0);
  const double ratio = naive_secs / balanced_secs;
  CHECK(ratio > 0.6);
  CHECK(ratio < 1.67);
}

TEST_CASE("verification passes on seeded instances") {
  auto opts = small_opts();
  const verify_report report = verify(60, 48, opts);
  CHECK(report.instances == 60);
  CHECK(report.disagreements == 0);
  CHECK(report.ok());

  CHECK_THROWS_AS(verify(10, oracle_cap + 1, opts), std::invalid_argument);
  CHECK_THROWS_AS(verify(0, 16, opts), std::invalid_argument);
}
