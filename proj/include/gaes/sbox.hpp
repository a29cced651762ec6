#pragma once

/**
@file sbox.hpp
@brief AES substitution tables generated from field inversion and GF(2) affine maps

Nothing here is a literal table. The forward S-box is inversion in GF(2^8)
followed by the affine map with circulant([1,1,1,1,1,0,0,0]) and constant
0x63. The inverse S-box is the inverse affine map (circulant([0,1,0,1,0,0,1,0]),
constant 0x05) followed by inversion. The two constructions are independent
and build_sbox_pair() cross-checks them.
*/

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "gf256.hpp"

namespace gaes {

using ByteTable = std::array<std::uint8_t, 256>;

/// Forward and inverse substitution tables.
struct SBoxPair {
  ByteTable forward{};
  ByteTable inverse{};
};

inline constexpr std::uint8_t kSBoxAffineRow = 0xF8;     // 1 1 1 1 1 0 0 0
inline constexpr std::uint8_t kSBoxAffineConst = 0x63;
inline constexpr std::uint8_t kInvSBoxAffineRow = 0x52;  // 0 1 0 1 0 0 1 0
inline constexpr std::uint8_t kInvSBoxAffineConst = 0x05;

namespace detail {

constexpr std::uint8_t affine_byte(std::uint8_t row0, std::uint8_t constant, std::uint8_t v) noexcept {
  const BitMatrix8 a = BitMatrix8::circulant(bits_of_byte(GFByte(row0)));
  return byte_of_bits(gf2_affine(a, bits_of_byte(GFByte(v)), bits_of_byte(GFByte(constant)))).value;
}

template <std::uint16_t Poly>
ByteTable gen_sbox_in() {
  ByteTable out{};
  for (unsigned v = 0; v < 256; ++v) {
    const std::uint8_t w = inv_mod<Poly>(static_cast<std::uint8_t>(v));
    out[v] = affine_byte(kSBoxAffineRow, kSBoxAffineConst, w);
  }
  return out;
}

// Index whose inverse-affine image is zero; that slot must map to 0 since
// zero has no multiplicative inverse.
inline std::uint8_t inverse_zero_slot() {
  std::optional<std::uint8_t> slot;
  for (unsigned v = 0; v < 256; ++v) {
    if (affine_byte(kInvSBoxAffineRow, kInvSBoxAffineConst, static_cast<std::uint8_t>(v)) == 0) {
      if (slot) {
        throw std::logic_error("inverse affine map is not injective");
      }
      slot = static_cast<std::uint8_t>(v);
    }
  }
  if (!slot) {
    throw std::logic_error("inverse affine map has no zero pre-image");
  }
  return *slot;
}

template <std::uint16_t Poly>
ByteTable gen_sbox_inv_in() {
  const std::uint8_t zero_slot = inverse_zero_slot();
  ByteTable out{};
  for (unsigned v = 0; v < 256; ++v) {
    if (v == zero_slot) {
      out[v] = 0;
      continue;
    }
    const std::uint8_t z = affine_byte(kInvSBoxAffineRow, kInvSBoxAffineConst, static_cast<std::uint8_t>(v));
    out[v] = inv_mod<Poly>(z);
  }
  return out;
}

template <std::uint16_t Poly>
SBoxPair build_sbox_pair_in() {
  SBoxPair pair{gen_sbox_in<Poly>(), gen_sbox_inv_in<Poly>()};
  for (unsigned i = 0; i < 256; ++i) {
    if (pair.inverse[pair.forward[i]] != i) {
      throw std::logic_error("sbox cross-check failed: inverse table does not invert forward table");
    }
  }
  return pair;
}

}  // namespace detail

/// Forward AES S-box.
inline ByteTable gen_sbox() { return detail::gen_sbox_in<kAesPolynomial>(); }

/// Inverse AES S-box, built independently of gen_sbox().
inline ByteTable gen_sbox_inv() { return detail::gen_sbox_inv_in<kAesPolynomial>(); }

/// Both tables; throws std::logic_error if they are not mutual inverses.
inline SBoxPair build_sbox_pair() { return detail::build_sbox_pair_in<kAesPolynomial>(); }

/// Process-wide tables, generated on first use.
inline const SBoxPair& standard_sbox_pair() {
  static const SBoxPair pair = build_sbox_pair();
  return pair;
}

}  // namespace gaes
