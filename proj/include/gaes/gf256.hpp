#pragma once

/**
@file gf256.hpp
@brief arithmetic in GF(2^8) under the AES polynomial x^8 + x^4 + x^3 + x + 1

Bytes are polynomials over GF(2): bit i is the coefficient of x^i. Addition
is XOR; multiplication is a carry-less product reduced modulo 0x11B.

The module also carries the GF(2) bit-vector algebra used by the S-box
affine transforms (BitVec8, BitMatrix8) and small dense matrices over the
field (GFMatrix) used for MixColumns.
*/

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace gaes {

/// The AES reduction polynomial. The public API exposes no other modulus.
inline constexpr std::uint16_t kAesPolynomial = 0x11B;

namespace detail {

// Russian-peasant multiply with interleaved reduction. Templated on the
// modulus only so tests can build a deliberately broken field.
template <std::uint16_t Poly>
constexpr std::uint8_t mul_mod(std::uint8_t a, std::uint8_t b) noexcept {
  static_assert(Poly > 0xFF && Poly < 0x200, "modulus must have degree 8");
  unsigned acc = 0;
  unsigned x = a;
  while (b != 0) {
    if (b & 1u) {
      acc ^= x;
    }
    x <<= 1;
    if (x & 0x100u) {
      x ^= Poly;
    }
    b >>= 1;
  }
  return static_cast<std::uint8_t>(acc);
}

// a^254 = a^-1 for a != 0; 0 maps to 0.
template <std::uint16_t Poly>
constexpr std::uint8_t inv_mod(std::uint8_t a) noexcept {
  std::uint8_t result = 1;
  std::uint8_t base = a;
  unsigned e = 254;
  while (e != 0) {
    if (e & 1u) {
      result = mul_mod<Poly>(result, base);
    }
    base = mul_mod<Poly>(base, base);
    e >>= 1;
  }
  return a == 0 ? std::uint8_t{0} : result;
}

// Multiply by x. `low` is the modulus without its x^8 term.
constexpr std::uint8_t xtime(std::uint8_t v, std::uint8_t low) noexcept {
  return static_cast<std::uint8_t>((v << 1) ^ (static_cast<std::uint8_t>(-(v >> 7)) & low));
}

}  // namespace detail

/// One element of GF(2^8).
struct GFByte {
  std::uint8_t value = 0;

  constexpr GFByte() noexcept = default;
  constexpr explicit GFByte(std::uint8_t v) noexcept : value(v) {}

  friend constexpr bool operator==(GFByte, GFByte) noexcept = default;

  friend constexpr GFByte operator+(GFByte a, GFByte b) noexcept {
    return GFByte(static_cast<std::uint8_t>(a.value ^ b.value));
  }
  friend constexpr GFByte operator*(GFByte a, GFByte b) noexcept {
    return GFByte(detail::mul_mod<kAesPolynomial>(a.value, b.value));
  }
  constexpr GFByte& operator+=(GFByte o) noexcept { return *this = *this + o; }
  constexpr GFByte& operator*=(GFByte o) noexcept { return *this = *this * o; }
};

constexpr GFByte gf_add(GFByte a, GFByte b) noexcept { return a + b; }

constexpr GFByte gf_mul(GFByte a, GFByte b) noexcept { return a * b; }

/// Repeated multiplication. 0^0 is rejected.
constexpr GFByte gf_pow(GFByte a, unsigned e) {
  if (a.value == 0 && e == 0) {
    throw std::domain_error("gf_pow: 0^0 is undefined");
  }
  GFByte result(1);
  for (unsigned i = 0; i < e; ++i) {
    result *= a;
  }
  return result;
}

/// Multiplicative inverse; gf_inv(0) = 0 by convention.
constexpr GFByte gf_inv(GFByte a) noexcept {
  return GFByte(detail::inv_mod<kAesPolynomial>(a.value));
}

// ----------------------------------------------------------------------------
// GF(2) bit algebra
// ----------------------------------------------------------------------------

/// Eight bits, MSB-first: index 0 is the coefficient of x^7.
struct BitVec8 {
  std::array<bool, 8> bits{};
  friend constexpr bool operator==(const BitVec8&, const BitVec8&) noexcept = default;
};

constexpr BitVec8 bits_of_byte(GFByte a) noexcept {
  BitVec8 v;
  for (int i = 0; i < 8; ++i) {
    v.bits[static_cast<std::size_t>(i)] = ((a.value >> (7 - i)) & 1u) != 0;
  }
  return v;
}

constexpr GFByte byte_of_bits(const BitVec8& v) noexcept {
  unsigned out = 0;
  for (bool bit : v.bits) {
    out = (out << 1) | (bit ? 1u : 0u);
  }
  return GFByte(static_cast<std::uint8_t>(out));
}

/// 8x8 matrix over GF(2).
struct BitMatrix8 {
  std::array<std::array<bool, 8>, 8> cells{};

  static constexpr BitMatrix8 identity() noexcept {
    BitMatrix8 m;
    for (std::size_t i = 0; i < 8; ++i) {
      m.cells[i][i] = true;
    }
    return m;
  }

  /// Row 0 is `first`; row r is `first` cyclically shifted right by r.
  static constexpr BitMatrix8 circulant(const BitVec8& first) noexcept {
    BitMatrix8 m;
    for (std::size_t r = 0; r < 8; ++r) {
      for (std::size_t c = 0; c < 8; ++c) {
        m.cells[r][c] = first.bits[(c + 8 - r) % 8];
      }
    }
    return m;
  }

  friend constexpr bool operator==(const BitMatrix8&, const BitMatrix8&) noexcept = default;
};

/// z = A*y + b over GF(2).
constexpr BitVec8 gf2_affine(const BitMatrix8& a, const BitVec8& y, const BitVec8& b) noexcept {
  BitVec8 z;
  for (std::size_t i = 0; i < 8; ++i) {
    bool acc = b.bits[i];
    for (std::size_t j = 0; j < 8; ++j) {
      acc ^= a.cells[i][j] && y.bits[j];
    }
    z.bits[i] = acc;
  }
  return z;
}

// ----------------------------------------------------------------------------
// Matrices over GF(2^8)
// ----------------------------------------------------------------------------

/// Dense row-major matrix of field elements.
class GFMatrix {
 public:
  GFMatrix() = default;

  GFMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  GFMatrix(std::size_t rows, std::size_t cols, std::vector<GFByte> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("GFMatrix: data length does not match rows*cols");
    }
  }

  GFMatrix(std::size_t rows, std::size_t cols, std::initializer_list<std::uint8_t> values)
      : rows_(rows), cols_(cols) {
    if (values.size() != rows * cols) {
      throw std::invalid_argument("GFMatrix: data length does not match rows*cols");
    }
    data_.reserve(values.size());
    for (auto v : values) {
      data_.emplace_back(v);
    }
  }

  static GFMatrix identity(std::size_t n) {
    GFMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = GFByte(1);
    }
    return m;
  }

  /// Row 0 is `first`; row r is `first` cyclically shifted right by r.
  static GFMatrix circulant(std::span<const GFByte> first) {
    const std::size_t n = first.size();
    GFMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) = first[(c + n - r) % n];
      }
    }
    return m;
  }

  static GFMatrix circulant(std::initializer_list<std::uint8_t> first) {
    std::vector<GFByte> row;
    for (auto v : first) {
      row.emplace_back(v);
    }
    return circulant(std::span<const GFByte>(row));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const GFByte> data() const noexcept { return data_; }

  GFByte& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  GFByte operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const GFMatrix&, const GFMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GFByte> data_;
};

/// Matrix product with field multiply and add.
inline GFMatrix gf_matmul(const GFMatrix& a, const GFMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("gf_matmul: inner dimensions differ");
  }
  GFMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const GFByte aik = a(i, k);
      if (aik.value == 0) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

}  // namespace gaes
