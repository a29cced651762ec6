#pragma once

/**
@file state.hpp
@brief the AES round transforms applied to a whole batch of states at once

A StateSlab holds the current 16-byte state of N messages. Logically it is an
N x 16 grid (one row per message, row byte 4c+r is state cell (r, c)). It is
stored column-major: each of the 16 state bytes is a contiguous plane of N
bytes, so every transform below is a sweep over whole planes and touches all
messages in one pass.
*/

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "gf256.hpp"
#include "sbox.hpp"
#include "types.hpp"

namespace gaes {

/// Source index for each destination byte of ShiftRows (0-based).
inline constexpr std::array<std::uint8_t, 16> kShiftRowsSource = {
    0, 5, 10, 15, 4, 9, 14, 3, 8, 13, 2, 7, 12, 1, 6, 11};

/// Source index for each destination byte of InvShiftRows (0-based).
inline constexpr std::array<std::uint8_t, 16> kInvShiftRowsSource = {
    0, 13, 10, 7, 4, 1, 14, 11, 8, 5, 2, 15, 12, 9, 6, 3};

using MixCoefficients = std::array<std::array<std::uint8_t, 4>, 4>;

/// Forward (circulant [2,3,1,1]) and inverse (circulant [14,11,13,9]) mix matrices.
struct MixMatrices {
  GFMatrix forward;
  GFMatrix inverse;

  static MixMatrices make() {
    return {GFMatrix::circulant({2, 3, 1, 1}), GFMatrix::circulant({14, 11, 13, 9})};
  }
  static const MixMatrices& standard() {
    static const MixMatrices m = make();
    return m;
  }
};

inline MixCoefficients mix_coefficients(const GFMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument("mix matrix must be 4x4");
  }
  MixCoefficients c{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      c[i][j] = m(i, j).value;
    }
  }
  return c;
}

namespace detail {

// Column-major plane kernels. `data` holds 16 planes of `n` bytes each.

inline void sub_bytes_planes(std::uint8_t* data, std::size_t n, const ByteTable& table) noexcept {
  const std::size_t count = kBlockBytes * n;
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = table[data[i]];
  }
}

inline void add_key_planes(std::uint8_t* data, std::size_t n, const Block& key) noexcept {
  for (std::size_t b = 0; b < kBlockBytes; ++b) {
    std::uint8_t* plane = data + b * n;
    const std::uint8_t k = key[b];
    for (std::size_t i = 0; i < n; ++i) {
      plane[i] ^= k;
    }
  }
}

inline void xor_planes(std::uint8_t* dst, const std::uint8_t* src, std::size_t count) noexcept {
  for (std::size_t i = 0; i < count; ++i) {
    dst[i] ^= src[i];
  }
}

// scratch: 16 * n bytes
inline void permute_planes(std::uint8_t* data, std::size_t n, const std::array<std::uint8_t, 16>& source,
                           std::uint8_t* scratch) noexcept {
  std::copy_n(data, kBlockBytes * n, scratch);
  for (std::size_t b = 0; b < kBlockBytes; ++b) {
    if (source[b] != b) {
      std::copy_n(scratch + source[b] * n, n, data + b * n);
    }
  }
}

inline constexpr std::size_t kMixScratchPlanes = 4 * 7 + 4;

// Each column group (planes 4g..4g+3) is replaced by m x group. Products with
// the constant entries of m are built from repeated xtime of the inputs.
// scratch: kMixScratchPlanes * n bytes
inline void mix_planes(std::uint8_t* data, std::size_t n, const MixCoefficients& m, std::uint8_t reduction_low,
                       std::uint8_t* scratch) noexcept {
  unsigned all_bits = 0;
  for (const auto& row : m) {
    for (auto c : row) {
      all_bits |= c;
    }
  }
  int top_bit = 0;
  while ((all_bits >> (top_bit + 1)) != 0) {
    ++top_bit;
  }

  std::uint8_t* const out = scratch + 4 * 7 * n;
  for (std::size_t g = 0; g < 4; ++g) {
    std::array<std::array<const std::uint8_t*, 8>, 4> powers{};
    for (std::size_t j = 0; j < 4; ++j) {
      powers[j][0] = data + (4 * g + j) * n;
      for (int b = 1; b <= top_bit; ++b) {
        std::uint8_t* dst = scratch + (j * 7 + static_cast<std::size_t>(b - 1)) * n;
        const std::uint8_t* src = powers[j][static_cast<std::size_t>(b - 1)];
        for (std::size_t i = 0; i < n; ++i) {
          dst[i] = detail::xtime(src[i], reduction_low);
        }
        powers[j][static_cast<std::size_t>(b)] = dst;
      }
    }
    for (std::size_t r = 0; r < 4; ++r) {
      std::uint8_t* acc = out + r * n;
      std::fill_n(acc, n, std::uint8_t{0});
      for (std::size_t j = 0; j < 4; ++j) {
        for (int b = 0; b <= top_bit; ++b) {
          if ((m[r][j] >> b) & 1u) {
            xor_planes(acc, powers[j][static_cast<std::size_t>(b)], n);
          }
        }
      }
    }
    std::copy_n(out, 4 * n, data + 4 * g * n);
  }
}

}  // namespace detail

/// Current state of N messages, stored one plane per state byte.
class StateSlab {
 public:
  StateSlab() = default;
  explicit StateSlab(std::size_t rows) : rows_(rows), data_(rows * kBlockBytes) {}

  static StateSlab from_rows(std::span<const Block> rows) {
    StateSlab s(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      s.set_row(r, rows[r]);
    }
    return s;
  }

  std::size_t rows() const noexcept { return rows_; }

  std::uint8_t& at(std::size_t row, std::size_t byte) { return data_[byte * rows_ + row]; }
  std::uint8_t at(std::size_t row, std::size_t byte) const { return data_[byte * rows_ + row]; }

  Block row(std::size_t r) const {
    Block out{};
    for (std::size_t b = 0; b < kBlockBytes; ++b) {
      out[b] = at(r, b);
    }
    return out;
  }

  void set_row(std::size_t r, const Block& v) {
    for (std::size_t b = 0; b < kBlockBytes; ++b) {
      at(r, b) = v[b];
    }
  }

  std::span<std::uint8_t> plane(std::size_t byte) { return {data_.data() + byte * rows_, rows_}; }
  std::span<const std::uint8_t> plane(std::size_t byte) const { return {data_.data() + byte * rows_, rows_}; }

  std::uint8_t* data() noexcept { return data_.data(); }
  const std::uint8_t* data() const noexcept { return data_.data(); }

  friend bool operator==(const StateSlab&, const StateSlab&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::uint8_t> data_;
};

inline void sub_bytes(StateSlab& slab, const ByteTable& table) {
  detail::sub_bytes_planes(slab.data(), slab.rows(), table);
}

inline void shift_rows(StateSlab& slab) {
  std::vector<std::uint8_t> scratch(kBlockBytes * slab.rows());
  detail::permute_planes(slab.data(), slab.rows(), kShiftRowsSource, scratch.data());
}

inline void inv_shift_rows(StateSlab& slab) {
  std::vector<std::uint8_t> scratch(kBlockBytes * slab.rows());
  detail::permute_planes(slab.data(), slab.rows(), kInvShiftRowsSource, scratch.data());
}

/// Each 4-byte column group of every row becomes m x column over GF(2^8).
inline void mix_columns(StateSlab& slab, const GFMatrix& m) {
  const MixCoefficients coeffs = mix_coefficients(m);
  std::vector<std::uint8_t> scratch(detail::kMixScratchPlanes * slab.rows());
  detail::mix_planes(slab.data(), slab.rows(), coeffs, static_cast<std::uint8_t>(kAesPolynomial & 0xFF),
                     scratch.data());
}

/// XOR the same round key into every row.
inline void add_round_key(StateSlab& slab, const Block& round_key) {
  detail::add_key_planes(slab.data(), slab.rows(), round_key);
}

}  // namespace gaes
