#include "jndkit/raster.hpp"

#include <cmath>

#include "jndkit/errors.hpp"

namespace jndkit {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    fail(ErrorCode::InvalidArgument, "raster dimensions must be at least 1x1");
  }
}

}  // namespace

Raster::Raster(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
  check_dims(width, height);
  samples_.assign(pixel_count() * kChannels, fill);
}

Raster::Raster(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  check_dims(width, height);
  if (samples_.size() != pixel_count() * kChannels) {
    fail(ErrorCode::DimensionMismatch, "sample buffer length does not match width*height*3");
  }
}

Raster Raster::uniform(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Raster img(width, height);
  auto s = img.samples();
  for (std::size_t i = 0; i < s.size(); i += 3) {
    s[i] = r;
    s[i + 1] = g;
    s[i + 2] = b;
  }
  return img;
}

Raster Raster::flipped_horizontally() const {
  Raster out(width_, height_);
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      for (int c = 0; c < kChannels; ++c) out.at(width_ - 1 - x, y, c) = at(x, y, c);
  return out;
}

std::uint8_t quantize(double value) noexcept {
  if (!(value > 0.0)) return 0;  // also maps NaN to 0
  if (value >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(value));
}

std::vector<double> luma_plane(const Raster& img) {
  std::vector<double> y(img.pixel_count());
  auto s = img.samples();
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = luma(s[3 * i], s[3 * i + 1], s[3 * i + 2]);
  }
  return y;
}

}  // namespace jndkit
