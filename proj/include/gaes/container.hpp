#pragma once

/**
@file container.hpp
@brief on-disk ciphertext container

Layout (all integers big-endian):

    offset  size    field
    0       4       magic "GAES"
    4       1       version (0x01)
    5       1       mode (0x01 = CBC)
    6       1       iv mode (0x00 shared, 0x01 per-message)
    7       1       reserved (0x00)
    8       4       N, number of messages
    12      4       M, padded length (multiple of 16)
    16      16|16N  IV block
    ...     4N      original lengths
    ...     N*M     ciphertext, row-major

The file size is exactly 16 + |IV block| + 4N + N*M.
*/

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbc.hpp"
#include "types.hpp"

namespace gaes {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::array<std::uint8_t, 4> kContainerMagic = {'G', 'A', 'E', 'S'};
inline constexpr std::uint8_t kContainerVersion = 0x01;
inline constexpr std::uint8_t kModeCbc = 0x01;
inline constexpr std::size_t kContainerHeaderBytes = 16;

struct CipherContainer {
  IVSet ivs = IVSet::shared(Block{});
  std::vector<std::uint32_t> lengths;
  ByteGrid payload;

  std::size_t n_messages() const noexcept { return payload.rows(); }
  std::size_t padded_len() const noexcept { return payload.cols(); }

  friend bool operator==(const CipherContainer&, const CipherContainer&) = default;
};

/// Exact serialized size for the given geometry.
inline std::uint64_t container_size(std::uint64_t n, std::uint64_t m, IVSet::Mode iv_mode) {
  const std::uint64_t ivs = iv_mode == IVSet::Mode::shared ? kBlockBytes : kBlockBytes * n;
  return kContainerHeaderBytes + ivs + 4 * n + n * m;
}

namespace detail {

inline void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint32_t get_be32(const std::uint8_t* p) noexcept {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

}  // namespace detail

inline std::vector<std::uint8_t> write_container(const CipherContainer& c) {
  const std::size_t n = c.n_messages();
  const std::size_t m = c.padded_len();
  constexpr auto u32_max = std::numeric_limits<std::uint32_t>::max();
  if (n > u32_max || m > u32_max) {
    throw std::invalid_argument("container: geometry does not fit 32-bit fields");
  }
  if (m % kBlockBytes != 0) {
    throw std::invalid_argument("container: padded length must be a multiple of 16");
  }
  if (c.lengths.size() != n) {
    throw std::invalid_argument("container: one length per message required");
  }
  if (std::any_of(c.lengths.begin(), c.lengths.end(), [m](std::uint32_t len) { return len > m; })) {
    throw std::invalid_argument("container: length exceeds padded length");
  }
  c.ivs.check_compatible(n);

  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(container_size(n, m, c.ivs.mode())));
  out.insert(out.end(), kContainerMagic.begin(), kContainerMagic.end());
  out.push_back(kContainerVersion);
  out.push_back(kModeCbc);
  out.push_back(static_cast<std::uint8_t>(c.ivs.mode()));
  out.push_back(0x00);
  detail::put_be32(out, static_cast<std::uint32_t>(n));
  detail::put_be32(out, static_cast<std::uint32_t>(m));
  for (const Block& iv : c.ivs.stored()) {
    out.insert(out.end(), iv.begin(), iv.end());
  }
  for (auto len : c.lengths) {
    detail::put_be32(out, len);
  }
  out.insert(out.end(), c.payload.bytes().begin(), c.payload.bytes().end());
  return out;
}

inline CipherContainer read_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kContainerHeaderBytes) {
    throw FormatError("truncated header");
  }
  if (!std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin())) {
    throw FormatError("bad magic");
  }
  if (bytes[4] != kContainerVersion) {
    throw FormatError("unsupported version");
  }
  if (bytes[5] != kModeCbc) {
    throw FormatError("unsupported mode");
  }
  if (bytes[6] > 0x01) {
    throw FormatError("bad iv mode");
  }
  if (bytes[7] != 0x00) {
    throw FormatError("bad reserved byte");
  }
  const auto iv_mode = static_cast<IVSet::Mode>(bytes[6]);
  const std::uint32_t n = detail::get_be32(bytes.data() + 8);
  const std::uint32_t m = detail::get_be32(bytes.data() + 12);
  if (m % kBlockBytes != 0) {
    throw FormatError("padded length is not a multiple of 16");
  }
  const std::uint64_t expected = container_size(n, m, iv_mode);
  if (bytes.size() < expected) {
    throw FormatError("truncated file");
  }
  if (bytes.size() != expected) {
    throw FormatError("size mismatch: trailing bytes after payload");
  }

  const std::uint8_t* p = bytes.data() + kContainerHeaderBytes;
  std::vector<Block> ivs(iv_mode == IVSet::Mode::shared ? 1 : n);
  for (Block& iv : ivs) {
    std::copy_n(p, kBlockBytes, iv.begin());
    p += kBlockBytes;
  }
  std::vector<std::uint32_t> lengths(n);
  for (auto& len : lengths) {
    len = detail::get_be32(p);
    p += 4;
    if (len > m) {
      throw FormatError("message length exceeds padded length");
    }
  }
  std::vector<std::uint8_t> payload(p, p + static_cast<std::size_t>(std::uint64_t{n} * m));
  return CipherContainer{iv_mode == IVSet::Mode::shared ? IVSet::shared(ivs.front()) : IVSet::per_message(std::move(ivs)),
                         std::move(lengths), ByteGrid(n, m, std::move(payload))};
}

}  // namespace gaes
