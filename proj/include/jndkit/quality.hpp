#pragma once

#include <limits>

#include "jndkit/raster.hpp"

namespace jndkit {

inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

struct QualityReport {
  double psnr = 0.0;  ///< dB; kInfinitePsnr when the inputs are identical
  double ssim = 0.0;  ///< in [-1, 1]
};

/// Mean squared error over all RGB samples.
double mse(const Raster& ref, const Raster& test);

/// 10*log10(255^2 / MSE) pooled over the three channels.
double psnr(const Raster& ref, const Raster& test);

/// Mean SSIM over non-overlapping 8x8 luma windows (K1 = 0.01, K2 = 0.03,
/// L = 255). Trailing rows/columns that do not fill a window are skipped; an
/// image narrower or shorter than 8 uses a single window of its full extent
/// along that axis.
double ssim(const Raster& ref, const Raster& test);

/// Throws DimensionMismatch when shapes differ.
QualityReport quality(const Raster& ref, const Raster& test);

}  // namespace jndkit
