#pragma once

/**
@file key_schedule.hpp
@brief AES-128 key expansion

Row 0 of a KeySchedule is the raw key, rows 1..10 the expanded round keys.
Bytes within a row follow the column-major state layout: bytes 0-3 are state
column 0 top to bottom, and so on.
*/

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "gf256.hpp"
#include "sbox.hpp"
#include "types.hpp"

namespace gaes {

struct KeySchedule {
  std::array<Block, kRounds + 1> rounds{};

  const Block& operator[](std::size_t r) const { return rounds[r]; }
  friend bool operator==(const KeySchedule&, const KeySchedule&) = default;
};

/// x^(r-1) for r = 1..10.
inline std::array<std::uint8_t, kRounds> round_constants() {
  std::array<std::uint8_t, kRounds> out{};
  for (unsigned r = 1; r <= kRounds; ++r) {
    out[r - 1] = gf_pow(GFByte(2), r - 1).value;
  }
  return out;
}

inline KeySchedule gen_keys(std::span<const std::uint8_t> key, const ByteTable& sbox) {
  if (key.size() != kKeyBytes) {
    throw std::invalid_argument("gen_keys: key must be exactly 16 bytes");
  }
  const auto rcon = round_constants();
  KeySchedule ks;
  std::copy(key.begin(), key.end(), ks.rounds[0].begin());
  for (std::size_t r = 1; r <= kRounds; ++r) {
    const Block& prev = ks.rounds[r - 1];
    Block& next = ks.rounds[r];

    // last column rotated up by one, substituted, plus the round constant
    std::array<std::uint8_t, 4> temp{};
    for (std::size_t i = 0; i < 4; ++i) {
      temp[i] = sbox[prev[12 + (i + 1) % 4]];
    }
    temp[0] ^= rcon[r - 1];

    for (std::size_t i = 0; i < 4; ++i) {
      next[i] = prev[i] ^ temp[i];
    }
    for (std::size_t i = 4; i < kBlockBytes; ++i) {
      next[i] = prev[i] ^ next[i - 4];
    }
  }
  return ks;
}

}  // namespace gaes
