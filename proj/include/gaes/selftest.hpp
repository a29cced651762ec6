#pragma once

/**
@file selftest.hpp
@brief known-answer suite run before any benchmark and by `gaes selftest`
*/

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbc.hpp"
#include "kat.hpp"

namespace gaes {

struct CheckResult {
  std::string name;
  bool passed = false;
};

namespace detail {

inline bool same_bytes(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

/// Run every check against `tables`, in order; the S-box checks come first.
inline std::vector<CheckResult> run_selftest(const CipherTables& tables = CipherTables::standard()) {
  using Check = std::pair<const char*, std::function<bool()>>;
  const std::vector<Check> checks = {
      {"sbox-fips197",
       [&] { return detail::same_bytes(tables.sboxes.forward, kat::kFips197SBox); }},
      {"sbox-inverse-permutation",
       [&] {
         for (unsigned i = 0; i < 256; ++i) {
           if (tables.sboxes.inverse[tables.sboxes.forward[i]] != i ||
               tables.sboxes.forward[tables.sboxes.inverse[i]] != i) {
             return false;
           }
         }
         return true;
       }},
      {"mix-matrices-inverse",
       [&] { return gf_matmul(tables.mix.forward, tables.mix.inverse) == GFMatrix::identity(4); }},
      {"round-constants",
       [] { return detail::same_bytes(round_constants(), kat::kRoundConstants); }},
      {"key-expansion-fips197-a1",
       [&] {
         const KeySchedule ks = gen_keys(kat::kA1Key, tables.sboxes.forward);
         return detail::same_bytes(std::span(ks[1]).first(4), kat::kA1FirstExpandedWord) &&
                detail::same_bytes(ks[kRounds], kat::kA1LastRoundKey);
       }},
      {"block-fips197-c1",
       [&] {
         const KeySchedule ks = gen_keys(kat::kC1Key, tables.sboxes.forward);
         const Block scalar = encrypt_block_scalar(ks, tables.sboxes, kat::kC1Plain);
         const std::vector<Block> rows = {kat::kC1Plain};
         const ByteGrid batch = encrypt_batch(tables, kat::kC1Key, IVSet::shared(Block{}), pad_zero(rows));
         return detail::same_bytes(scalar, kat::kC1Cipher) && detail::same_bytes(batch.row(0), kat::kC1Cipher) &&
                detail::same_bytes(decrypt_block_scalar(ks, tables.sboxes, scalar), kat::kC1Plain);
       }},
      {"cbc-encrypt-sp800-38a",
       [&] {
         const std::vector<std::array<std::uint8_t, 64>> rows = {kat::kCbcPlain};
         const ByteGrid ct = encrypt_batch(tables, kat::kCbcKey, IVSet::shared(kat::kCbcIv), pad_zero(rows));
         return detail::same_bytes(ct.row(0), kat::kCbcCipher);
       }},
      {"cbc-decrypt-sp800-38a",
       [&] {
         const ByteGrid ct(1, kat::kCbcCipher.size(), {kat::kCbcCipher.begin(), kat::kCbcCipher.end()});
         const ByteGrid pt = decrypt_batch(tables, kat::kCbcKey, IVSet::shared(kat::kCbcIv), ct);
         return detail::same_bytes(pt.row(0), kat::kCbcPlain);
       }},
  };

  std::vector<CheckResult> results;
  results.reserve(checks.size());
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    results.push_back({name, ok});
  }
  return results;
}

inline bool all_passed(std::span<const CheckResult> results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace gaes
