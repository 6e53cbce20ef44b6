#pragma once

#include <vector>

#include "jndkit/raster.hpp"

namespace jndkit {

enum class ColorSpace { Hls, Hsv };

/// One pixel in a cylindrical color space. Hue is in degrees [0, 360); the
/// other two components are in [0, 1]. For HLS they are (lightness,
/// saturation), for HSV (saturation, value).
struct ColorTriplet {
  double hue = 0.0;
  double first = 0.0;
  double second = 0.0;
};

/// RGB components are normalized reals in [0, 1].
ColorTriplet rgb_to_hls(double r, double g, double b) noexcept;
ColorTriplet rgb_to_hsv(double r, double g, double b) noexcept;
void hls_to_rgb(const ColorTriplet& hls, double& r, double& g, double& b) noexcept;
void hsv_to_rgb(const ColorTriplet& hsv, double& r, double& g, double& b) noexcept;

/// Per-pixel conversion of a whole image, row-major.
std::vector<ColorTriplet> convert_color(const Raster& img, ColorSpace space);

/// Inverse of convert_color; each channel is requantized to 8 bits.
Raster convert_back(std::span<const ColorTriplet> pixels, int width, int height, ColorSpace space);

}  // namespace jndkit
