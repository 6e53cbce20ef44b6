#include "jndkit/quality.hpp"

#include <algorithm>
#include <cmath>

#include "jndkit/errors.hpp"

namespace jndkit {

namespace {

constexpr int kWindow = 8;
constexpr double kDynamicRange = 255.0;
constexpr double kC1 = (0.01 * kDynamicRange) * (0.01 * kDynamicRange);
constexpr double kC2 = (0.03 * kDynamicRange) * (0.03 * kDynamicRange);

void require_same_shape(const Raster& a, const Raster& b) {
  if (!a.same_shape(b)) {
    fail(ErrorCode::DimensionMismatch, "reference and test rasters differ in dimensions");
  }
}

double window_ssim(const std::vector<double>& x, const std::vector<double>& y, int stride, int x0, int y0,
                   int w, int h) {
  const double n = static_cast<double>(w) * h;
  double mx = 0.0, my = 0.0;
  for (int j = y0; j < y0 + h; ++j)
    for (int i = x0; i < x0 + w; ++i) {
      mx += x[j * stride + i];
      my += y[j * stride + i];
    }
  mx /= n;
  my /= n;
  double vx = 0.0, vy = 0.0, cxy = 0.0;
  for (int j = y0; j < y0 + h; ++j)
    for (int i = x0; i < x0 + w; ++i) {
      const double dx = x[j * stride + i] - mx;
      const double dy = y[j * stride + i] - my;
      vx += dx * dx;
      vy += dy * dy;
      cxy += dx * dy;
    }
  const double denom = n > 1.0 ? n - 1.0 : 1.0;
  vx /= denom;
  vy /= denom;
  cxy /= denom;
  const double num = (2.0 * mx * my + kC1) * (2.0 * cxy + kC2);
  const double den = (mx * mx + my * my + kC1) * (vx + vy + kC2);
  return num / den;
}

}  // namespace

double mse(const Raster& ref, const Raster& test) {
  require_same_shape(ref, test);
  auto a = ref.samples();
  auto b = test.samples();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double psnr(const Raster& ref, const Raster& test) {
  const double e = mse(ref, test);
  if (e == 0.0) return kInfinitePsnr;
  return 10.0 * std::log10(kDynamicRange * kDynamicRange / e);
}

double ssim(const Raster& ref, const Raster& test) {
  require_same_shape(ref, test);
  const auto x = luma_plane(ref);
  const auto y = luma_plane(test);
  const int w = ref.width();
  const int h = ref.height();
  const int ww = std::min(kWindow, w);
  const int wh = std::min(kWindow, h);
  double total = 0.0;
  int count = 0;
  for (int y0 = 0; y0 + wh <= h; y0 += wh)
    for (int x0 = 0; x0 + ww <= w; x0 += ww) {
      total += window_ssim(x, y, w, x0, y0, ww, wh);
      ++count;
    }
  return total / count;
}

QualityReport quality(const Raster& ref, const Raster& test) {
  return {psnr(ref, test), ssim(ref, test)};
}

}  // namespace jndkit
