#pragma once

/**
@file bench.hpp
@brief throughput sweeps over batch geometry and worker count

Three sweeps:
  - count:   fixed message length (16 bytes), growing number of messages
  - length:  fixed number of messages (128), growing message length
  - workers: fixed large batch, growing worker count

Every sweep first runs the known-answer suite and refuses to time a broken
cipher. Each point is timed over `repetitions` samples after `warmup` untimed
calls; one sample repeats the workload until it covers at least 10 ms, and the
median per-call time is reported. Records serialize to CSV.
*/

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cbc.hpp"
#include "parallel.hpp"
#include "selftest.hpp"

namespace gaes::bench {

enum class SweepKind { count, length, workers };
enum class Implementation { vectorized, scalar_baseline };

inline std::string_view to_string(SweepKind k) {
  switch (k) {
    case SweepKind::count: return "count";
    case SweepKind::length: return "length";
    case SweepKind::workers: return "workers";
  }
  return "unknown";
}

inline std::string_view to_string(Implementation i) {
  return i == Implementation::vectorized ? "vectorized" : "scalar-baseline";
}

struct SweepConfig {
  SweepKind kind = SweepKind::count;
  std::size_t message_len = 16;
  std::size_t n_messages = 128;       // fixed N for length and worker sweeps
  std::vector<std::size_t> points;    // counts, lengths or worker counts
  std::size_t repetitions = 5;
  std::size_t warmup = 1;
  std::size_t workers = 1;            // for count and length sweeps
  bool include_baseline = false;      // also time the scalar per-block loop
  std::uint64_t seed = 1;
  double min_sample_seconds = 0.010;

  void validate() const {
    if (repetitions < 3) {
      throw std::invalid_argument("SweepConfig: repetitions must be at least 3");
    }
    if (message_len == 0 || n_messages == 0 || workers == 0) {
      throw std::invalid_argument("SweepConfig: sizes must be positive");
    }
    if (std::any_of(points.begin(), points.end(), [](std::size_t v) { return v == 0; })) {
      throw std::invalid_argument("SweepConfig: sweep points must be positive");
    }
  }

  static SweepConfig count_sweep() {
    SweepConfig c;
    c.kind = SweepKind::count;
    c.points = {1, 10, 100, 1000, 10000, 100000};
    c.include_baseline = true;
    return c;
  }
  static SweepConfig length_sweep() {
    SweepConfig c;
    c.kind = SweepKind::length;
    c.points = {16, 64, 256, 1024, 4096};
    return c;
  }
  static SweepConfig worker_sweep() {
    SweepConfig c;
    c.kind = SweepKind::workers;
    c.n_messages = 100000;
    c.points = {1, 2, 4, 8};
    return c;
  }
};

struct BenchRecord {
  SweepKind kind = SweepKind::count;
  Implementation implementation = Implementation::vectorized;
  std::size_t n_messages = 0;
  std::size_t message_len_bytes = 0;
  std::size_t workers = 1;
  std::size_t total_bytes = 0;
  double median_seconds = 0.0;
  double rate_bytes_per_second = 0.0;
  // sample never reached the minimum duration
  bool timer_limited = false;
};

struct Measurement {
  double median_seconds = 0.0;
  bool timer_limited = false;
};

/// Median per-call seconds of `fn` over `repetitions` samples.
template <class Fn>
Measurement measure(Fn&& fn, std::size_t repetitions, std::size_t warmup, double min_sample_seconds) {
  using clock = std::chrono::steady_clock;
  for (std::size_t i = 0; i < warmup; ++i) {
    fn();
  }
  auto time_calls = [&](std::size_t calls) {
    const auto start = clock::now();
    for (std::size_t i = 0; i < calls; ++i) {
      fn();
    }
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  constexpr std::size_t kMaxCalls = std::size_t{1} << 24;
  std::size_t calls = 1;
  double elapsed = time_calls(calls);
  while (elapsed < min_sample_seconds && calls < kMaxCalls) {
    const double scale = elapsed > 0 ? 1.5 * min_sample_seconds / elapsed : 16.0;
    calls = std::min(kMaxCalls, std::max(calls * 2, static_cast<std::size_t>(static_cast<double>(calls) * scale)));
    elapsed = time_calls(calls);
  }

  Measurement m;
  m.timer_limited = elapsed < min_sample_seconds;
  std::vector<double> samples;
  samples.reserve(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    samples.push_back(time_calls(calls) / static_cast<double>(calls));
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  m.median_seconds = samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
  return m;
}

/// Random key, IV and n messages of exactly `len` bytes.
struct Workload {
  Block key{};
  Block iv{};
  MessageBatch batch;
};

inline Workload make_workload(std::uint64_t seed, std::size_t n, std::size_t len) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  Workload w;
  for (auto& b : w.key) b = static_cast<std::uint8_t>(byte(rng));
  for (auto& b : w.iv) b = static_cast<std::uint8_t>(byte(rng));
  std::vector<std::vector<std::uint8_t>> msgs(n, std::vector<std::uint8_t>(len));
  for (auto& m : msgs) {
    for (auto& b : m) b = static_cast<std::uint8_t>(byte(rng));
  }
  w.batch = pad_zero(msgs);
  return w;
}

/// Throws if the known-answer suite fails.
inline void require_selftest() {
  for (const auto& r : run_selftest()) {
    if (!r.passed) {
      throw std::runtime_error("known-answer self-test failed: " + r.name);
    }
  }
}

namespace detail {

inline BenchRecord time_point(const SweepConfig& cfg, Implementation impl, std::size_t n, std::size_t len,
                              std::size_t workers) {
  const Workload w = make_workload(cfg.seed, n, len);
  const IVSet ivs = IVSet::shared(w.iv);
  Measurement m;
  if (impl == Implementation::vectorized) {
    m = measure([&] { (void)encrypt_batch_parallel(w.key, ivs, w.batch, workers); }, cfg.repetitions, cfg.warmup,
                cfg.min_sample_seconds);
  } else {
    const CipherTables& tables = CipherTables::standard();
    m = measure(
        [&] {
          const KeySchedule ks = gen_keys(w.key, tables.sboxes.forward);
          for (std::size_t i = 0; i < n; ++i) {
            (void)encrypt_cbc_scalar(ks, tables.sboxes, w.iv, w.batch.data.row(i));
          }
        },
        cfg.repetitions, cfg.warmup, cfg.min_sample_seconds);
  }
  BenchRecord r;
  r.kind = cfg.kind;
  r.implementation = impl;
  r.n_messages = n;
  r.message_len_bytes = len;
  r.workers = impl == Implementation::vectorized ? workers : 1;
  r.total_bytes = n * len;
  r.median_seconds = m.median_seconds;
  r.rate_bytes_per_second = static_cast<double>(r.total_bytes) / m.median_seconds;
  r.timer_limited = m.timer_limited;
  return r;
}

}  // namespace detail

inline std::vector<BenchRecord> run_count_sweep(const SweepConfig& cfg) {
  cfg.validate();
  require_selftest();
  std::vector<BenchRecord> out;
  for (std::size_t n : cfg.points) {
    out.push_back(detail::time_point(cfg, Implementation::vectorized, n, cfg.message_len, cfg.workers));
    if (cfg.include_baseline) {
      out.push_back(detail::time_point(cfg, Implementation::scalar_baseline, n, cfg.message_len, 1));
    }
  }
  return out;
}

inline std::vector<BenchRecord> run_length_sweep(const SweepConfig& cfg) {
  cfg.validate();
  require_selftest();
  std::vector<BenchRecord> out;
  for (std::size_t len : cfg.points) {
    out.push_back(detail::time_point(cfg, Implementation::vectorized, cfg.n_messages, len, cfg.workers));
    if (cfg.include_baseline) {
      out.push_back(detail::time_point(cfg, Implementation::scalar_baseline, cfg.n_messages, len, 1));
    }
  }
  return out;
}

inline std::vector<BenchRecord> run_worker_sweep(const SweepConfig& cfg) {
  cfg.validate();
  if (cfg.points.empty() || cfg.points.front() != 1 || !std::is_sorted(cfg.points.begin(), cfg.points.end())) {
    throw std::invalid_argument("worker sweep: counts must be ascending and start at 1");
  }
  require_selftest();
  std::vector<BenchRecord> out;
  for (std::size_t w : cfg.points) {
    out.push_back(detail::time_point(cfg, Implementation::vectorized, cfg.n_messages, cfg.message_len, w));
  }
  return out;
}

/// rate(W) / rate(first record) for each record of a worker sweep.
inline std::vector<double> speedups(std::span<const BenchRecord> records) {
  std::vector<double> out;
  if (records.empty()) {
    return out;
  }
  const double base = records.front().rate_bytes_per_second;
  for (const auto& r : records) {
    out.push_back(r.workers == records.front().workers ? 1.0 : r.rate_bytes_per_second / base);
  }
  return out;
}

inline constexpr std::string_view kCsvHeader =
    "kind,implementation,n_messages,message_len_bytes,workers,total_bytes,median_seconds,rate_bytes_per_second";

namespace detail {

inline void append_double(std::string& out, double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

}  // namespace detail

inline std::string emit_csv(std::span<const BenchRecord> records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += to_string(r.kind);
    out += ',';
    out += to_string(r.implementation);
    for (std::size_t v : {r.n_messages, r.message_len_bytes, r.workers, r.total_bytes}) {
      out += ',';
      out += std::to_string(v);
    }
    out += ',';
    detail::append_double(out, r.median_seconds);
    out += ',';
    detail::append_double(out, r.rate_bytes_per_second);
    out += '\n';
  }
  return out;
}

/// CSV preceded by a `# seed=...` metadata comment.
inline std::string emit_csv(std::span<const BenchRecord> records, std::uint64_t seed) {
  return "# seed=" + std::to_string(seed) + "\n" + emit_csv(records);
}

}  // namespace gaes::bench
