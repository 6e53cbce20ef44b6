#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "jndkit/raster.hpp"

namespace jndkit {

/// 1 / (1 + exp(-kappa * (x - 0.5))) for a normalized sample x.
double sigmoid_contrast(double x, double kappa) noexcept;

/// Sigmoid contrast remap applied per channel; kappa > 0.
Raster apply_contrast(const Raster& img, double kappa);

/// Normalized 1-D Gaussian taps with sigma = radius, truncated at +/- ceil(3 sigma).
std::vector<double> gaussian_kernel(double radius);

/// Separable Gaussian blur with clamp-to-edge borders; radius 0 is the identity.
Raster apply_blur(const Raster& img, double radius);

/// Scales the HLS lightness channel.
Raster apply_brightness(const Raster& img, double factor);

/// Scales the HSV saturation channel.
Raster apply_color(const Raster& img, double factor);

/// Adds zero-mean Gaussian noise of the given variance (0-255 scale), drawn
/// independently per channel from a seeded xoshiro256** stream.
Raster apply_noise(const Raster& img, double variance, std::uint64_t seed);

struct MaskPlacement {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

inline constexpr std::uint8_t kMaskFill = 128;

/// Rectangle of floor(fraction * W) x floor(fraction * H) at a seed-chosen
/// position fully inside the image.
MaskPlacement mask_placement(int width, int height, double side_fraction, std::uint64_t seed);

/// Paints an opaque mid-gray patch with a one-pixel black border.
Raster apply_mask(const Raster& img, double side_fraction, std::uint64_t seed);

enum class WatermarkKind { QrCode, Text };

/// Alpha-composites a watermark: out = (1 - alpha) * base + alpha * mark on
/// every covered pixel. QR codes (with a 4-module quiet zone) occupy a square
/// of 20% of the shorter side, bottom-right, 2% margin; text is drawn white
/// along the image diagonal through the center. 0 < alpha <= 0.5.
Raster apply_watermark(const Raster& img, double alpha, WatermarkKind kind, std::string_view payload);

}  // namespace jndkit
