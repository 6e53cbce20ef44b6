#pragma once

#include <array>
#include <cstdint>

namespace jndkit::glyphs {

inline constexpr int kCellWidth = 7;
inline constexpr int kCellHeight = 15;
inline constexpr int kFirstCode = 32;
inline constexpr int kGlyphCount = 95;

extern const std::array<std::array<std::uint8_t, kCellHeight>, kGlyphCount> kCells;

/// Non-printable characters render as blank cells.
inline bool pixel(char c, int x, int y) noexcept {
  const int code = static_cast<unsigned char>(c);
  if (code < kFirstCode || code >= kFirstCode + kGlyphCount) return false;
  if (x < 0 || x >= kCellWidth || y < 0 || y >= kCellHeight) return false;
  return ((kCells[code - kFirstCode][y] >> (kCellWidth - 1 - x)) & 1) != 0;
}

}  // namespace jndkit::glyphs
