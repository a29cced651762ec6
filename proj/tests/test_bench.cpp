#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "gaes/bench.hpp"

namespace bench = gaes::bench;

namespace {

bench::SweepConfig quick(bench::SweepConfig c) {
  c.repetitions = 3;
  c.warmup = 0;
  c.min_sample_seconds = 0.002;
  return c;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST(EmitCsv, EmptyIsHeaderOnly) {
  EXPECT_EQ(bench::emit_csv({}), std::string(bench::kCsvHeader) + "\n");
}

TEST(EmitCsv, FieldOrderAndExactRate) {
  bench::BenchRecord r;
  r.kind = bench::SweepKind::length;
  r.implementation = bench::Implementation::scalar_baseline;
  r.n_messages = 128;
  r.message_len_bytes = 64;
  r.workers = 1;
  r.total_bytes = 8192;
  r.median_seconds = 0.0123456789;
  r.rate_bytes_per_second = static_cast<double>(r.total_bytes) / r.median_seconds;
  const std::vector<bench::BenchRecord> records = {r};
  const auto lines = split(bench::emit_csv(records), '\n');
  ASSERT_EQ(lines.size(), 2u);
  const auto f = split(lines[1], ',');
  ASSERT_EQ(f.size(), 8u);
  EXPECT_EQ(f[0], "length");
  EXPECT_EQ(f[1], "scalar-baseline");
  EXPECT_EQ(f[2], "128");
  EXPECT_EQ(f[3], "64");
  EXPECT_EQ(f[4], "1");
  EXPECT_EQ(f[5], "8192");
  EXPECT_EQ(std::stod(f[6]), r.median_seconds);
  EXPECT_EQ(std::stod(f[7]), 8192.0 / std::stod(f[6]));
  EXPECT_EQ(lines[1].find(' '), std::string::npos);
}

TEST(EmitCsv, SeedComment) {
  const auto text = bench::emit_csv({}, 77);
  EXPECT_EQ(text.rfind("# seed=77\n", 0), 0u);
}

TEST(Measure, ReturnsMedianOfPositiveSamples) {
  volatile int sink = 0;
  const auto m = bench::measure([&] { for (int i = 0; i < 1000; ++i) sink = sink + i; }, 3, 1, 0.001);
  EXPECT_GT(m.median_seconds, 0.0);
  EXPECT_FALSE(m.timer_limited);
}

TEST(SweepConfig, Validation) {
  auto c = bench::SweepConfig::count_sweep();
  EXPECT_NO_THROW(c.validate());
  c.repetitions = 2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = bench::SweepConfig::count_sweep();
  c.points = {1, 0};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = quick(bench::SweepConfig::worker_sweep());
  c.points = {2, 4};
  EXPECT_THROW(bench::run_worker_sweep(c), std::invalid_argument);
}

TEST(Sweeps, CountSweepBookkeeping) {
  auto c = quick(bench::SweepConfig::count_sweep());
  c.points = {1, 10, 100};
  const auto records = bench::run_count_sweep(c);
  ASSERT_EQ(records.size(), 6u);  // vectorized + baseline per point
  EXPECT_EQ(records[0].implementation, bench::Implementation::vectorized);
  EXPECT_EQ(records[1].implementation, bench::Implementation::scalar_baseline);
  EXPECT_EQ(records[0].total_bytes, 16u);
  for (const auto& r : records) {
    EXPECT_EQ(r.kind, bench::SweepKind::count);
    EXPECT_EQ(r.rate_bytes_per_second, static_cast<double>(r.total_bytes) / r.median_seconds);
  }
}

TEST(Sweeps, LengthSweep) {
  auto c = quick(bench::SweepConfig::length_sweep());
  c.points = {16, 64, 256, 1024};
  const auto records = bench::run_length_sweep(c);
  ASSERT_EQ(records.size(), 4u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].n_messages, 128u);
    EXPECT_EQ(records[i].message_len_bytes, c.points[i]);
  }
}

TEST(Sweeps, WorkerSweepSpeedups) {
  auto c = quick(bench::SweepConfig::worker_sweep());
  c.n_messages = 4000;
  c.points = {1, 2, 3};
  const auto records = bench::run_worker_sweep(c);
  ASSERT_EQ(records.size(), 3u);
  const auto s = bench::speedups(records);
  EXPECT_EQ(s[0], 1.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_LE(s[i], static_cast<double>(records[i].workers)) << "workers=" << records[i].workers;
  }
}

TEST(Workload, DeterministicFromSeed) {
  const auto a = bench::make_workload(9, 10, 20);
  const auto b = bench::make_workload(9, 10, 20);
  EXPECT_EQ(a.key, b.key);
  EXPECT_EQ(a.batch.data, b.batch.data);
  EXPECT_EQ(a.batch.padded_len(), 32u);
}
