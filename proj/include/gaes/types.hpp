#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace gaes {

inline constexpr std::size_t kBlockBytes = 16;
inline constexpr std::size_t kKeyBytes = 16;
inline constexpr std::size_t kRounds = 10;

using Block = std::array<std::uint8_t, kBlockBytes>;

/// Row-major rows x cols byte grid; one row per message.
class ByteGrid {
 public:
  ByteGrid() = default;
  ByteGrid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ByteGrid(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("ByteGrid: data length does not match rows*cols");
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<std::uint8_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint8_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<std::uint8_t>& bytes() noexcept { return data_; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return data_; }

  friend bool operator==(const ByteGrid&, const ByteGrid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace gaes
