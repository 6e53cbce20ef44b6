#include "jndkit/distort.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <cmath>
#include <optional>

#include "jndkit/color.hpp"
#include "jndkit/errors.hpp"
#include "jndkit/glyphs.hpp"
#include "jndkit/qr.hpp"
#include "jndkit/rng.hpp"

namespace jndkit {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

// Scales the first non-hue component (HLS lightness, HSV saturation).
Raster scale_component(const Raster& img, ColorSpace space, double factor) {
  auto pixels = convert_color(img, space);
  for (auto& p : pixels) p.first = std::clamp(p.first * factor, 0.0, 1.0);
  return convert_back(pixels, img.width(), img.height(), space);
}

// Per-pixel watermark intensity, or nothing where the mark does not cover.
class MarkLayer {
 public:
  virtual ~MarkLayer() = default;
  virtual std::optional<double> at(int x, int y) const = 0;
};

class QrLayer final : public MarkLayer {
 public:
  QrLayer(const Raster& img, std::string_view payload) : code_(QrCode::encode(payload)) {
    const int shorter = std::min(img.width(), img.height());
    side_ = static_cast<int>(std::floor(0.2 * shorter));
    const int margin = static_cast<int>(std::lround(0.02 * shorter));
    x0_ = img.width() - margin - side_;
    y0_ = img.height() - margin - side_;
  }

  std::optional<double> at(int x, int y) const override {
    if (side_ < 1 || x < x0_ || y < y0_ || x >= x0_ + side_ || y >= y0_ + side_) return std::nullopt;
    const int total = code_.size() + 2 * kQuiet;
    const int mx = (x - x0_) * total / side_ - kQuiet;
    const int my = (y - y0_) * total / side_ - kQuiet;
    const bool inside = mx >= 0 && my >= 0 && mx < code_.size() && my < code_.size();
    return inside && code_.module(mx, my) ? 0.0 : 255.0;
  }

 private:
  static constexpr int kQuiet = 4;
  QrCode code_;
  int side_ = 0;
  int x0_ = 0;
  int y0_ = 0;
};

class TextLayer final : public MarkLayer {
 public:
  TextLayer(const Raster& img, std::string_view payload) : text_(payload) {
    const double w = img.width();
    const double h = img.height();
    cx_ = w / 2.0;
    cy_ = h / 2.0;
    const double angle = -std::atan2(h, w);
    cos_ = std::cos(angle);
    sin_ = std::sin(angle);
    text_w_ = static_cast<double>(text_.size()) * glyphs::kCellWidth;
    scale_ = text_.empty() ? 1.0 : 0.8 * std::hypot(w, h) / text_w_;
  }

  std::optional<double> at(int x, int y) const override {
    if (text_.empty()) return std::nullopt;
    const double dx = x + 0.5 - cx_;
    const double dy = y + 0.5 - cy_;
    const double u = (dx * cos_ + dy * sin_) / scale_ + text_w_ / 2.0;
    const double v = (-dx * sin_ + dy * cos_) / scale_ + glyphs::kCellHeight / 2.0;
    if (u < 0.0 || v < 0.0 || u >= text_w_ || v >= glyphs::kCellHeight) return std::nullopt;
    const int col = static_cast<int>(u);
    const char c = text_[static_cast<std::size_t>(col / glyphs::kCellWidth)];
    if (!glyphs::pixel(c, col % glyphs::kCellWidth, static_cast<int>(v))) return std::nullopt;
    return 255.0;
  }

 private:
  std::string text_;
  double cx_ = 0, cy_ = 0, cos_ = 1, sin_ = 0, text_w_ = 0, scale_ = 1;
};

}  // namespace

double sigmoid_contrast(double x, double kappa) noexcept { return 1.0 / (1.0 + std::exp(-kappa * (x - 0.5))); }

Raster apply_contrast(const Raster& img, double kappa) {
  require(kappa > 0.0, "contrast kappa must be positive");
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) lut[v] = quantize(255.0 * sigmoid_contrast(v / 255.0, kappa));
  Raster out = img;
  for (auto& s : out.samples()) s = lut[s];
  return out;
}

std::vector<double> gaussian_kernel(double radius) {
  require(radius > 0.0, "blur kernel needs a positive radius");
  const int half = static_cast<int>(std::ceil(3.0 * radius));
  std::vector<double> k(2 * half + 1);
  double sum = 0.0;
  for (int i = -half; i <= half; ++i) {
    k[i + half] = std::exp(-(i * i) / (2.0 * radius * radius));
    sum += k[i + half];
  }
  for (double& v : k) v /= sum;
  return k;
}

Raster apply_blur(const Raster& img, double radius) {
  require(radius >= 0.0, "blur radius must be non-negative");
  if (radius == 0.0) return img;
  const auto kernel = gaussian_kernel(radius);
  const int half = static_cast<int>(kernel.size() / 2);
  const int w = img.width();
  const int h = img.height();
  std::vector<double> tmp(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int k = -half; k <= half; ++k) acc += kernel[k + half] * img.at(std::clamp(x + k, 0, w - 1), y, c);
        tmp[(static_cast<std::size_t>(y) * w + x) * 3 + c] = acc;
      }
  Raster out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int k = -half; k <= half; ++k) {
          const int yy = std::clamp(y + k, 0, h - 1);
          acc += kernel[k + half] * tmp[(static_cast<std::size_t>(yy) * w + x) * 3 + c];
        }
        out.at(x, y, c) = quantize(acc);
      }
  return out;
}

Raster apply_brightness(const Raster& img, double factor) {
  require(factor > 0.0, "brightness factor must be positive");
  return scale_component(img, ColorSpace::Hls, factor);
}

Raster apply_color(const Raster& img, double factor) {
  require(factor > 0.0, "color factor must be positive");
  return scale_component(img, ColorSpace::Hsv, factor);
}

Raster apply_noise(const Raster& img, double variance, std::uint64_t seed) {
  require(variance >= 0.0, "noise variance must be non-negative");
  if (variance == 0.0) return img;
  const double sigma = std::sqrt(variance);
  Rng rng(seed);
  Raster out = img;
  for (auto& s : out.samples()) s = quantize(s + sigma * rng.gaussian());
  return out;
}

MaskPlacement mask_placement(int width, int height, double side_fraction, std::uint64_t seed) {
  require(side_fraction > 0.0 && side_fraction <= 0.25, "mask side fraction must be in (0, 0.25]");
  // The epsilon absorbs representation error such as 0.29 * 100 = 28.999...
  MaskPlacement m;
  m.width = static_cast<int>(std::floor(side_fraction * width + 1e-9));
  m.height = static_cast<int>(std::floor(side_fraction * height + 1e-9));
  Rng rng(seed);
  m.x = static_cast<int>(rng.between(0, width - m.width));
  m.y = static_cast<int>(rng.between(0, height - m.height));
  return m;
}

Raster apply_mask(const Raster& img, double side_fraction, std::uint64_t seed) {
  const MaskPlacement m = mask_placement(img.width(), img.height(), side_fraction, seed);
  Raster out = img;
  for (int y = m.y; y < m.y + m.height; ++y)
    for (int x = m.x; x < m.x + m.width; ++x) {
      const bool border = x == m.x || y == m.y || x == m.x + m.width - 1 || y == m.y + m.height - 1;
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = border ? 0 : kMaskFill;
    }
  return out;
}

Raster apply_watermark(const Raster& img, double alpha, WatermarkKind kind, std::string_view payload) {
  require(alpha > 0.0 && alpha <= 0.5, "watermark alpha must be in (0, 0.5]");
  std::unique_ptr<MarkLayer> layer;
  if (kind == WatermarkKind::QrCode) {
    layer = std::make_unique<QrLayer>(img, payload);
  } else {
    layer = std::make_unique<TextLayer>(img, payload);
  }
  Raster out = img;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const auto mark = layer->at(x, y);
      if (!mark) continue;
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = quantize((1.0 - alpha) * img.at(x, y, c) + alpha * *mark);
    }
  return out;
}

}  // namespace jndkit
