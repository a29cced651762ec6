#pragma once

/**
@file cbc.hpp
@brief AES-128-CBC over batches of messages, plus a scalar per-block path

The batch path treats N messages as an N x M byte grid and runs every round
transform across all messages at once (see state.hpp). Each message keeps its
own CBC chain, so the result is byte-identical to running CBC per message.

Padding is zero-fill to the next 16-byte boundary. Zero padding is not
self-delimiting, so original lengths travel with the batch.

Note: a shared IV across messages leaks equality of plaintext prefixes. It is
supported because the single-IV broadcast is a common prototyping setup; use
per-message IVs for anything else.
*/

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <ranges>
#include <span>
#include <stdexcept>
#include <vector>

#include "gf256.hpp"
#include "key_schedule.hpp"
#include "sbox.hpp"
#include "state.hpp"
#include "types.hpp"

namespace gaes {

// ----------------------------------------------------------------------------
// Tables
// ----------------------------------------------------------------------------

/// Everything the cipher needs besides the key: generated S-boxes, mix matrices
/// and the low byte of the reduction polynomial for xtime.
struct CipherTables {
  SBoxPair sboxes;
  MixMatrices mix;
  MixCoefficients mix_forward{};
  MixCoefficients mix_inverse{};
  std::uint8_t reduction_low = 0;

  template <std::uint16_t Poly = kAesPolynomial>
  static CipherTables build() {
    CipherTables t;
    t.sboxes = detail::build_sbox_pair_in<Poly>();
    t.mix = MixMatrices::make();
    t.mix_forward = mix_coefficients(t.mix.forward);
    t.mix_inverse = mix_coefficients(t.mix.inverse);
    t.reduction_low = static_cast<std::uint8_t>(Poly & 0xFF);
    return t;
  }

  static const CipherTables& standard() {
    static const CipherTables t = build();
    return t;
  }
};

// ----------------------------------------------------------------------------
// Batches and IVs
// ----------------------------------------------------------------------------

/// N messages zero-padded to a common width M (a multiple of 16).
struct MessageBatch {
  ByteGrid data;
  std::vector<std::size_t> original_lens;

  std::size_t n_messages() const noexcept { return data.rows(); }
  std::size_t padded_len() const noexcept { return data.cols(); }

  void validate() const {
    if (original_lens.size() != n_messages()) {
      throw std::invalid_argument("MessageBatch: one original length per message required");
    }
    if (n_messages() == 0) {
      return;
    }
    if (padded_len() == 0 || padded_len() % kBlockBytes != 0) {
      throw std::invalid_argument("MessageBatch: padded length must be a positive multiple of 16");
    }
    for (std::size_t i = 0; i < n_messages(); ++i) {
      if (original_lens[i] > padded_len()) {
        throw std::invalid_argument("MessageBatch: original length exceeds padded length");
      }
      const auto row = data.row(i);
      if (!std::all_of(row.begin() + static_cast<std::ptrdiff_t>(original_lens[i]), row.end(),
                       [](std::uint8_t b) { return b == 0; })) {
        throw std::invalid_argument("MessageBatch: padding bytes must be zero");
      }
    }
  }
};

template <class T>
concept ByteSequence = std::ranges::contiguous_range<T> && std::ranges::sized_range<T> &&
                       sizeof(std::ranges::range_value_t<T>) == 1;

/// Pack messages into a rectangular batch padded to 16 * ceil(max_len / 16).
template <std::ranges::input_range R>
  requires ByteSequence<std::ranges::range_value_t<R>>
MessageBatch pad_zero(const R& messages) {
  std::size_t n = 0;
  std::size_t max_len = 0;
  for (const auto& m : messages) {
    const auto len = std::ranges::size(m);
    if (len == 0) {
      throw std::invalid_argument("pad_zero: empty message");
    }
    max_len = std::max<std::size_t>(max_len, len);
    ++n;
  }
  if (n == 0) {
    throw std::invalid_argument("pad_zero: empty batch");
  }
  const std::size_t width = kBlockBytes * ((max_len + kBlockBytes - 1) / kBlockBytes);
  MessageBatch batch{ByteGrid(n, width), {}};
  batch.original_lens.reserve(n);
  std::size_t i = 0;
  for (const auto& m : messages) {
    const auto* src = reinterpret_cast<const std::uint8_t*>(std::ranges::data(m));
    const auto len = static_cast<std::size_t>(std::ranges::size(m));
    std::copy_n(src, len, batch.data.row(i).begin());
    batch.original_lens.push_back(len);
    ++i;
  }
  return batch;
}

/// Inverse of pad_zero: rows truncated to their original lengths.
inline std::vector<std::vector<std::uint8_t>> extract_messages(const ByteGrid& grid,
                                                                std::span<const std::size_t> lens) {
  if (lens.size() != grid.rows()) {
    throw std::invalid_argument("extract_messages: one length per row required");
  }
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(grid.rows());
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    if (lens[i] > grid.cols()) {
      throw std::invalid_argument("extract_messages: length exceeds row width");
    }
    const auto row = grid.row(i);
    out.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(lens[i]));
  }
  return out;
}

/// Either one IV broadcast to every message or one IV per message.
class IVSet {
 public:
  enum class Mode : std::uint8_t { shared = 0x00, per_message = 0x01 };

  static IVSet shared(const Block& iv) { return IVSet(Mode::shared, {iv}); }
  static IVSet per_message(std::vector<Block> ivs) { return IVSet(Mode::per_message, std::move(ivs)); }

  Mode mode() const noexcept { return mode_; }
  bool is_shared() const noexcept { return mode_ == Mode::shared; }

  /// Stored rows: 1 when shared, N otherwise.
  std::span<const Block> stored() const noexcept { return ivs_; }

  /// IV for message i.
  const Block& row(std::size_t i) const { return is_shared() ? ivs_.front() : ivs_[i]; }

  void check_compatible(std::size_t n_messages) const {
    if (!is_shared() && ivs_.size() != n_messages) {
      throw std::invalid_argument("IVSet: per-message IV count does not match message count");
    }
  }

  friend bool operator==(const IVSet&, const IVSet&) = default;

 private:
  IVSet(Mode mode, std::vector<Block> ivs) : mode_(mode), ivs_(std::move(ivs)) {}

  Mode mode_ = Mode::shared;
  std::vector<Block> ivs_;
};

// ----------------------------------------------------------------------------
// Scalar path
// ----------------------------------------------------------------------------
//
// One block at a time, field products through the shift-and-XOR gf_mul and
// ShiftRows as the textbook row rotation. Independent of the batch kernels
// and used as the baseline they are benchmarked against.

namespace detail {

using BlockState = std::array<GFByte, kBlockBytes>;

inline void scalar_shift_rows(BlockState& s, bool inverse) noexcept {
  const BlockState in = s;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const std::size_t from = inverse ? (c + 4 - r) % 4 : (c + r) % 4;
      s[4 * c + r] = in[4 * from + r];
    }
  }
}

inline void scalar_mix_columns(BlockState& s, const GFMatrix& m) {
  for (std::size_t c = 0; c < 4; ++c) {
    std::array<GFByte, 4> col{};
    for (std::size_t i = 0; i < 4; ++i) {
      GFByte acc;
      for (std::size_t j = 0; j < 4; ++j) {
        acc = gf_add(acc, gf_mul(m(i, j), s[4 * c + j]));
      }
      col[i] = acc;
    }
    std::copy(col.begin(), col.end(), s.begin() + static_cast<std::ptrdiff_t>(4 * c));
  }
}

inline void scalar_add_key(BlockState& s, const Block& k) noexcept {
  for (std::size_t i = 0; i < kBlockBytes; ++i) {
    s[i] = gf_add(s[i], GFByte(k[i]));
  }
}

inline void scalar_sub(BlockState& s, const ByteTable& t) noexcept {
  for (auto& v : s) {
    v = GFByte(t[v.value]);
  }
}

inline void require_block(std::span<const std::uint8_t> block) {
  if (block.size() != kBlockBytes) {
    throw std::invalid_argument("block must be exactly 16 bytes");
  }
}

}  // namespace detail

inline Block encrypt_block_scalar(const KeySchedule& ks, const SBoxPair& sboxes, std::span<const std::uint8_t> block) {
  detail::require_block(block);
  const GFMatrix& mix = MixMatrices::standard().forward;
  detail::BlockState s{};
  for (std::size_t i = 0; i < kBlockBytes; ++i) {
    s[i] = GFByte(block[i]);
  }
  detail::scalar_add_key(s, ks[0]);
  for (std::size_t r = 1; r <= kRounds; ++r) {
    detail::scalar_sub(s, sboxes.forward);
    detail::scalar_shift_rows(s, false);
    if (r < kRounds) {
      detail::scalar_mix_columns(s, mix);
    }
    detail::scalar_add_key(s, ks[r]);
  }
  Block out{};
  for (std::size_t i = 0; i < kBlockBytes; ++i) {
    out[i] = s[i].value;
  }
  return out;
}

inline Block decrypt_block_scalar(const KeySchedule& ks, const SBoxPair& sboxes, std::span<const std::uint8_t> block) {
  detail::require_block(block);
  const GFMatrix& mix = MixMatrices::standard().inverse;
  detail::BlockState s{};
  for (std::size_t i = 0; i < kBlockBytes; ++i) {
    s[i] = GFByte(block[i]);
  }
  for (std::size_t r = kRounds; r >= 1; --r) {
    detail::scalar_add_key(s, ks[r]);
    if (r < kRounds) {
      detail::scalar_mix_columns(s, mix);
    }
    detail::scalar_shift_rows(s, true);
    detail::scalar_sub(s, sboxes.inverse);
  }
  detail::scalar_add_key(s, ks[0]);
  Block out{};
  for (std::size_t i = 0; i < kBlockBytes; ++i) {
    out[i] = s[i].value;
  }
  return out;
}

/// CBC over one already padded message, block by block.
inline std::vector<std::uint8_t> encrypt_cbc_scalar(const KeySchedule& ks, const SBoxPair& sboxes, const Block& iv,
                                                    std::span<const std::uint8_t> padded) {
  if (padded.size() % kBlockBytes != 0) {
    throw std::invalid_argument("encrypt_cbc_scalar: length must be a multiple of 16");
  }
  std::vector<std::uint8_t> out(padded.size());
  Block chain = iv;
  for (std::size_t off = 0; off < padded.size(); off += kBlockBytes) {
    Block in{};
    for (std::size_t i = 0; i < kBlockBytes; ++i) {
      in[i] = padded[off + i] ^ chain[i];
    }
    chain = encrypt_block_scalar(ks, sboxes, in);
    std::copy(chain.begin(), chain.end(), out.begin() + static_cast<std::ptrdiff_t>(off));
  }
  return out;
}

inline std::vector<std::uint8_t> decrypt_cbc_scalar(const KeySchedule& ks, const SBoxPair& sboxes, const Block& iv,
                                                    std::span<const std::uint8_t> ct) {
  if (ct.size() % kBlockBytes != 0) {
    throw std::invalid_argument("decrypt_cbc_scalar: length must be a multiple of 16");
  }
  std::vector<std::uint8_t> out(ct.size());
  Block chain = iv;
  for (std::size_t off = 0; off < ct.size(); off += kBlockBytes) {
    const auto block = ct.subspan(off, kBlockBytes);
    const Block plain = decrypt_block_scalar(ks, sboxes, block);
    for (std::size_t i = 0; i < kBlockBytes; ++i) {
      out[off + i] = plain[i] ^ chain[i];
    }
    std::copy(block.begin(), block.end(), chain.begin());
  }
  return out;
}

// ----------------------------------------------------------------------------
// Batch path
// ----------------------------------------------------------------------------

namespace detail {

inline constexpr std::size_t kTileRows = 256;

// Working buffers for one tile of messages, all in plane layout.
struct TileBuffers {
  std::vector<std::uint8_t> state;
  std::vector<std::uint8_t> chain;
  std::vector<std::uint8_t> saved;
  std::vector<std::uint8_t> scratch;

  explicit TileBuffers(std::size_t rows)
      : state(kBlockBytes * rows),
        chain(kBlockBytes * rows),
        saved(kBlockBytes * rows),
        scratch(std::max<std::size_t>(kMixScratchPlanes, kBlockBytes) * rows) {}
};

inline void load_ivs(std::uint8_t* planes, const IVSet& ivs, std::size_t first, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const Block& iv = ivs.row(first + k);
    for (std::size_t b = 0; b < kBlockBytes; ++b) {
      planes[b * n + k] = iv[b];
    }
  }
}

inline void gather_block(std::uint8_t* planes, const ByteGrid& grid, std::size_t first, std::size_t n,
                         std::size_t offset) {
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint8_t* src = grid.row(first + k).data() + offset;
    for (std::size_t b = 0; b < kBlockBytes; ++b) {
      planes[b * n + k] = src[b];
    }
  }
}

inline void scatter_block(const std::uint8_t* planes, ByteGrid& grid, std::size_t first, std::size_t n,
                          std::size_t offset) {
  for (std::size_t k = 0; k < n; ++k) {
    std::uint8_t* dst = grid.row(first + k).data() + offset;
    for (std::size_t b = 0; b < kBlockBytes; ++b) {
      dst[b] = planes[b * n + k];
    }
  }
}

/// Encrypt rows [first, last) of `plain` into the same rows of `out`.
inline void encrypt_rows(const CipherTables& tables, const KeySchedule& ks, const IVSet& ivs, const ByteGrid& plain,
                         std::size_t first, std::size_t last, ByteGrid& out) {
  const std::size_t width = plain.cols();
  TileBuffers buf(std::min(kTileRows, last - first));
  for (std::size_t t = first; t < last; t += kTileRows) {
    const std::size_t n = std::min(kTileRows, last - t);
    std::uint8_t* state = buf.state.data();
    std::uint8_t* chain = buf.chain.data();
    load_ivs(chain, ivs, t, n);
    for (std::size_t off = 0; off < width; off += kBlockBytes) {
      gather_block(state, plain, t, n, off);
      xor_planes(state, chain, kBlockBytes * n);
      add_key_planes(state, n, ks[0]);
      for (std::size_t r = 1; r <= kRounds; ++r) {
        sub_bytes_planes(state, n, tables.sboxes.forward);
        permute_planes(state, n, kShiftRowsSource, buf.scratch.data());
        if (r < kRounds) {
          mix_planes(state, n, tables.mix_forward, tables.reduction_low, buf.scratch.data());
        }
        add_key_planes(state, n, ks[r]);
      }
      scatter_block(state, out, t, n, off);
      std::copy_n(state, kBlockBytes * n, chain);
    }
  }
}

/// Decrypt rows [first, last) of `cipher` into the same rows of `out`.
inline void decrypt_rows(const CipherTables& tables, const KeySchedule& ks, const IVSet& ivs, const ByteGrid& cipher,
                         std::size_t first, std::size_t last, ByteGrid& out) {
  const std::size_t width = cipher.cols();
  TileBuffers buf(std::min(kTileRows, last - first));
  for (std::size_t t = first; t < last; t += kTileRows) {
    const std::size_t n = std::min(kTileRows, last - t);
    std::uint8_t* state = buf.state.data();
    std::uint8_t* chain = buf.chain.data();
    std::uint8_t* saved = buf.saved.data();
    load_ivs(chain, ivs, t, n);
    for (std::size_t off = 0; off < width; off += kBlockBytes) {
      gather_block(state, cipher, t, n, off);
      std::copy_n(state, kBlockBytes * n, saved);
      for (std::size_t r = kRounds; r >= 1; --r) {
        add_key_planes(state, n, ks[r]);
        if (r < kRounds) {
          mix_planes(state, n, tables.mix_inverse, tables.reduction_low, buf.scratch.data());
        }
        permute_planes(state, n, kInvShiftRowsSource, buf.scratch.data());
        sub_bytes_planes(state, n, tables.sboxes.inverse);
      }
      add_key_planes(state, n, ks[0]);
      xor_planes(state, chain, kBlockBytes * n);
      scatter_block(state, out, t, n, off);
      std::swap(chain, saved);
    }
  }
}

inline void require_key(std::span<const std::uint8_t> key) {
  if (key.size() != kKeyBytes) {
    throw std::invalid_argument("key must be exactly 16 bytes");
  }
}

inline void require_cipher_grid(const ByteGrid& ct) {
  if (ct.rows() > 0 && (ct.cols() == 0 || ct.cols() % kBlockBytes != 0)) {
    throw std::invalid_argument("ciphertext width must be a positive multiple of 16");
  }
}

}  // namespace detail

/// Encrypt every message of the batch; returns the N x M ciphertext grid.
inline ByteGrid encrypt_batch(const CipherTables& tables, std::span<const std::uint8_t> key, const IVSet& ivs,
                              const MessageBatch& batch) {
  detail::require_key(key);
  batch.validate();
  ivs.check_compatible(batch.n_messages());
  const KeySchedule ks = gen_keys(key, tables.sboxes.forward);
  ByteGrid out(batch.n_messages(), batch.padded_len());
  if (batch.n_messages() > 0) {
    detail::encrypt_rows(tables, ks, ivs, batch.data, 0, batch.n_messages(), out);
  }
  return out;
}

inline ByteGrid encrypt_batch(std::span<const std::uint8_t> key, const IVSet& ivs, const MessageBatch& batch) {
  return encrypt_batch(CipherTables::standard(), key, ivs, batch);
}

/// Decrypt an N x M ciphertext grid; returns the zero-padded plaintext grid.
inline ByteGrid decrypt_batch(const CipherTables& tables, std::span<const std::uint8_t> key, const IVSet& ivs,
                              const ByteGrid& ct) {
  detail::require_key(key);
  detail::require_cipher_grid(ct);
  ivs.check_compatible(ct.rows());
  const KeySchedule ks = gen_keys(key, tables.sboxes.forward);
  ByteGrid out(ct.rows(), ct.cols());
  if (ct.rows() > 0) {
    detail::decrypt_rows(tables, ks, ivs, ct, 0, ct.rows(), out);
  }
  return out;
}

inline ByteGrid decrypt_batch(std::span<const std::uint8_t> key, const IVSet& ivs, const ByteGrid& ct) {
  return decrypt_batch(CipherTables::standard(), key, ivs, ct);
}

}  // namespace gaes
