#pragma once

// Test-only reference routines. None of these share code with the library:
// multiplication reduces by long division after a full carry-less product,
// inversion is exhaustive search, and key expansion is the word-oriented
// FIPS-197 procedure driven by the published S-box table.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "gaes/kat.hpp"

namespace oracle {

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  std::uint32_t product = 0;
  for (int i = 0; i < 8; ++i) {
    if ((b >> i) & 1u) {
      product ^= std::uint32_t{a} << i;
    }
  }
  for (int bit = 14; bit >= 8; --bit) {
    if ((product >> bit) & 1u) {
      product ^= 0x11Bu << (bit - 8);
    }
  }
  return static_cast<std::uint8_t>(product);
}

inline std::uint8_t inverse(std::uint8_t a) {
  for (unsigned b = 1; b < 256; ++b) {
    if (mul(a, static_cast<std::uint8_t>(b)) == 1) {
      return static_cast<std::uint8_t>(b);
    }
  }
  return 0;
}

using Matrix = std::vector<std::vector<std::uint8_t>>;

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  Matrix out(n, std::vector<std::uint8_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::uint8_t acc = 0;
      for (std::size_t t = 0; t < k; ++t) {
        acc ^= mul(a[i][t], b[t][j]);
      }
      out[i][j] = acc;
    }
  }
  return out;
}

// FIPS-197 KeyExpansion with 32-bit words; returns 44 words as 11 x 16 bytes.
inline std::array<std::array<std::uint8_t, 16>, 11> expand_key(const std::array<std::uint8_t, 16>& key) {
  using Word = std::array<std::uint8_t, 4>;
  std::array<Word, 44> w{};
  for (int i = 0; i < 4; ++i) {
    w[i] = {key[4 * i], key[4 * i + 1], key[4 * i + 2], key[4 * i + 3]};
  }
  for (int i = 4; i < 44; ++i) {
    Word temp = w[i - 1];
    if (i % 4 == 0) {
      const Word rot = {temp[1], temp[2], temp[3], temp[0]};
      for (int j = 0; j < 4; ++j) {
        temp[j] = gaes::kat::kFips197SBox[rot[j]];
      }
      temp[0] ^= gaes::kat::kRoundConstants[i / 4 - 1];
    }
    for (int j = 0; j < 4; ++j) {
      w[i][j] = w[i - 4][j] ^ temp[j];
    }
  }
  std::array<std::array<std::uint8_t, 16>, 11> out{};
  for (int r = 0; r < 11; ++r) {
    for (int j = 0; j < 16; ++j) {
      out[r][j] = w[4 * r + j / 4][j % 4];
    }
  }
  return out;
}

inline std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(0, 255);
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(d(rng));
  return out;
}

inline std::array<std::uint8_t, 16> random_block(std::mt19937_64& rng) {
  std::array<std::uint8_t, 16> out{};
  const auto v = random_bytes(rng, 16);
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

}  // namespace oracle
