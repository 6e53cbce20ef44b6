#include "jndkit/color.hpp"

#include <algorithm>
#include <cmath>

#include "jndkit/errors.hpp"

namespace jndkit {

namespace {

double wrap_hue(double degrees) noexcept {
  double h = std::fmod(degrees, 360.0);
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h = 0.0;
  return h;
}

// Hue in degrees from the max channel, shared by HLS and HSV.
double hue_of(double r, double g, double b, double maxc, double minc) noexcept {
  const double span = maxc - minc;
  if (span <= 0.0) return 0.0;
  double h;
  if (maxc == r) {
    h = (g - b) / span;
  } else if (maxc == g) {
    h = 2.0 + (b - r) / span;
  } else {
    h = 4.0 + (r - g) / span;
  }
  return wrap_hue(h * 60.0);
}

double hls_channel(double m1, double m2, double hue) noexcept {
  hue = wrap_hue(hue);
  if (hue < 60.0) return m1 + (m2 - m1) * hue / 60.0;
  if (hue < 180.0) return m2;
  if (hue < 240.0) return m1 + (m2 - m1) * (240.0 - hue) / 60.0;
  return m1;
}

}  // namespace

ColorTriplet rgb_to_hls(double r, double g, double b) noexcept {
  const double maxc = std::max({r, g, b});
  const double minc = std::min({r, g, b});
  const double sum = maxc + minc;
  const double l = sum / 2.0;
  if (maxc == minc) return {0.0, l, 0.0};
  const double span = maxc - minc;
  const double s = l <= 0.5 ? span / sum : span / (2.0 - sum);
  return {hue_of(r, g, b, maxc, minc), l, std::clamp(s, 0.0, 1.0)};
}

ColorTriplet rgb_to_hsv(double r, double g, double b) noexcept {
  const double maxc = std::max({r, g, b});
  const double minc = std::min({r, g, b});
  if (maxc <= 0.0) return {0.0, 0.0, 0.0};
  const double s = (maxc - minc) / maxc;
  return {hue_of(r, g, b, maxc, minc), s, maxc};
}

void hls_to_rgb(const ColorTriplet& hls, double& r, double& g, double& b) noexcept {
  const double l = hls.first;
  const double s = hls.second;
  if (s <= 0.0) {
    r = g = b = l;
    return;
  }
  const double m2 = l <= 0.5 ? l * (1.0 + s) : l + s - l * s;
  const double m1 = 2.0 * l - m2;
  r = hls_channel(m1, m2, hls.hue + 120.0);
  g = hls_channel(m1, m2, hls.hue);
  b = hls_channel(m1, m2, hls.hue - 120.0);
}

void hsv_to_rgb(const ColorTriplet& hsv, double& r, double& g, double& b) noexcept {
  const double s = hsv.first;
  const double v = hsv.second;
  if (s <= 0.0) {
    r = g = b = v;
    return;
  }
  const double h = wrap_hue(hsv.hue) / 60.0;
  const int sector = std::min(5, static_cast<int>(h));
  const double f = h - sector;
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  switch (sector) {
    case 0: r = v, g = t, b = p; break;
    case 1: r = q, g = v, b = p; break;
    case 2: r = p, g = v, b = t; break;
    case 3: r = p, g = q, b = v; break;
    case 4: r = t, g = p, b = v; break;
    default: r = v, g = p, b = q; break;
  }
}

std::vector<ColorTriplet> convert_color(const Raster& img, ColorSpace space) {
  std::vector<ColorTriplet> out(img.pixel_count());
  auto s = img.samples();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double r = s[3 * i] / 255.0;
    const double g = s[3 * i + 1] / 255.0;
    const double b = s[3 * i + 2] / 255.0;
    out[i] = space == ColorSpace::Hls ? rgb_to_hls(r, g, b) : rgb_to_hsv(r, g, b);
  }
  return out;
}

Raster convert_back(std::span<const ColorTriplet> pixels, int width, int height, ColorSpace space) {
  Raster img(width, height);
  if (pixels.size() != img.pixel_count()) {
    fail(ErrorCode::DimensionMismatch, "pixel count does not match raster dimensions");
  }
  auto s = img.samples();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    double r, g, b;
    if (space == ColorSpace::Hls) {
      hls_to_rgb(pixels[i], r, g, b);
    } else {
      hsv_to_rgb(pixels[i], r, g, b);
    }
    s[3 * i] = quantize(r * 255.0);
    s[3 * i + 1] = quantize(g * 255.0);
    s[3 * i + 2] = quantize(b * 255.0);
  }
  return img;
}

}  // namespace jndkit
