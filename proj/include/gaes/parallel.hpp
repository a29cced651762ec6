#pragma once

/**
@file parallel.hpp
@brief data-parallel batch encryption across a pool of worker threads

Messages are independent under CBC, so a batch splits by rows: each worker
owns a contiguous, balanced range of messages and runs the full chain for
those rows only. Output bytes do not depend on the worker count.
*/

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cbc.hpp"

namespace gaes {

struct RowRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const RowRange&, const RowRange&) = default;
};

struct ParallelPlan {
  std::size_t workers = 1;
  std::vector<RowRange> chunks;
};

/// Balanced contiguous split of [0, n_messages); chunk sizes differ by at most one.
inline ParallelPlan plan(std::size_t n_messages, std::size_t workers) {
  if (workers == 0) {
    throw std::invalid_argument("plan: worker count must be at least 1");
  }
  ParallelPlan p;
  p.workers = std::max<std::size_t>(1, std::min(workers, n_messages));
  if (n_messages == 0) {
    return p;
  }
  const std::size_t base = n_messages / p.workers;
  const std::size_t extra = n_messages % p.workers;
  std::size_t begin = 0;
  for (std::size_t w = 0; w < p.workers; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    p.chunks.push_back({begin, begin + len});
    begin += len;
  }
  return p;
}

/// Run `fn(chunk)` for every chunk, the first on the calling thread. Rethrows
/// the first failure after all workers have joined.
template <class Fn>
void run_plan(const ParallelPlan& p, Fn&& fn) {
  if (p.chunks.empty()) {
    return;
  }
  std::vector<std::exception_ptr> errors(p.chunks.size());
  {
    std::vector<std::jthread> threads;
    threads.reserve(p.chunks.size() - 1);
    for (std::size_t i = 1; i < p.chunks.size(); ++i) {
      threads.emplace_back([&, i] {
        try {
          fn(p.chunks[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    try {
      fn(p.chunks[0]);
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

inline ByteGrid encrypt_batch_parallel(const CipherTables& tables, std::span<const std::uint8_t> key,
                                       const IVSet& ivs, const MessageBatch& batch, std::size_t workers) {
  detail::require_key(key);
  batch.validate();
  ivs.check_compatible(batch.n_messages());
  const ParallelPlan p = plan(batch.n_messages(), workers);
  const KeySchedule ks = gen_keys(key, tables.sboxes.forward);
  ByteGrid out(batch.n_messages(), batch.padded_len());
  run_plan(p, [&](RowRange r) { detail::encrypt_rows(tables, ks, ivs, batch.data, r.begin, r.end, out); });
  return out;
}

inline ByteGrid encrypt_batch_parallel(std::span<const std::uint8_t> key, const IVSet& ivs,
                                       const MessageBatch& batch, std::size_t workers) {
  return encrypt_batch_parallel(CipherTables::standard(), key, ivs, batch, workers);
}

inline ByteGrid decrypt_batch_parallel(const CipherTables& tables, std::span<const std::uint8_t> key,
                                       const IVSet& ivs, const ByteGrid& ct, std::size_t workers) {
  detail::require_key(key);
  detail::require_cipher_grid(ct);
  ivs.check_compatible(ct.rows());
  const ParallelPlan p = plan(ct.rows(), workers);
  const KeySchedule ks = gen_keys(key, tables.sboxes.forward);
  ByteGrid out(ct.rows(), ct.cols());
  run_plan(p, [&](RowRange r) { detail::decrypt_rows(tables, ks, ivs, ct, r.begin, r.end, out); });
  return out;
}

inline ByteGrid decrypt_batch_parallel(std::span<const std::uint8_t> key, const IVSet& ivs, const ByteGrid& ct,
                                       std::size_t workers) {
  return decrypt_batch_parallel(CipherTables::standard(), key, ivs, ct, workers);
}

/// Distinct (physical id, core id) pairs from /proc/cpuinfo, falling back to
/// the logical CPU count.
inline std::size_t physical_core_count() {
  std::ifstream in("/proc/cpuinfo");
  std::set<std::pair<std::string, std::string>> cores;
  std::string line;
  std::string physical = "0";
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      continue;
    }
    std::string key = line.substr(0, colon);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string value = line.substr(colon + 1);
    value.erase(0, value.find_first_not_of(' '));
    if (key == "physical id") {
      physical = value;
    } else if (key == "core id") {
      cores.emplace(physical, value);
    }
  }
  if (!cores.empty()) {
    return cores.size();
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// 0 for anything other than a plain decimal count.
inline std::size_t parse_worker_count(const char* text) {
  if (text == nullptr || *text == '\0') {
    return 0;
  }
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (*end != '\0' || text[0] == '-') {
    return 0;
  }
  return static_cast<std::size_t>(v);
}

/// Worker count from GAES_WORKERS if set and valid, else the detected core count.
inline std::size_t default_workers() {
  if (const std::size_t env = parse_worker_count(std::getenv("GAES_WORKERS")); env > 0) {
    return env;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace gaes
