#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace jndkit {

/// 8-bit interleaved RGB image, row-major. Width and height are at least 1 and
/// the sample buffer always holds exactly width * height * 3 bytes.
class Raster {
 public:
  static constexpr int kChannels = 3;

  Raster(int width, int height, std::uint8_t fill = 0);
  Raster(int width, int height, std::vector<std::uint8_t> samples);

  static Raster uniform(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }

  std::uint8_t& at(int x, int y, int c) noexcept { return samples_[index(x, y, c)]; }
  std::uint8_t at(int x, int y, int c) const noexcept { return samples_[index(x, y, c)]; }

  std::span<std::uint8_t> samples() noexcept { return samples_; }
  std::span<const std::uint8_t> samples() const noexcept { return samples_; }

  bool same_shape(const Raster& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  Raster flipped_horizontally() const;

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> samples_;
};

/// Quantize a real sample to 8 bits: round half away from zero, then clamp.
std::uint8_t quantize(double value) noexcept;

/// Rec. 601 luma of one pixel, unquantized.
inline double luma(double r, double g, double b) noexcept { return 0.299 * r + 0.587 * g + 0.114 * b; }

/// Luma plane of an image in double precision, row-major.
std::vector<double> luma_plane(const Raster& img);

}  // namespace jndkit
