#include "jndkit/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace jndkit {

namespace {

// First and second channel moments accumulated in exact integer arithmetic,
// so every statistic derived from them is independent of pixel order.
struct ChannelMoments {
  std::array<double, 3> mean{};
  std::array<std::array<double, 3>, 3> cov{};

  explicit ChannelMoments(const Raster& img) {
    std::array<__int128, 3> sum{};
    std::array<std::array<__int128, 3>, 3> cross{};
    auto s = img.samples();
    for (std::size_t i = 0; i < s.size(); i += 3) {
      for (int a = 0; a < 3; ++a) {
        sum[a] += s[i + a];
        for (int b = a; b < 3; ++b) cross[a][b] += static_cast<int>(s[i + a]) * s[i + b];
      }
    }
    const __int128 n = static_cast<__int128>(img.pixel_count());
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    for (int a = 0; a < 3; ++a) {
      mean[a] = static_cast<double>(sum[a]) / static_cast<double>(n);
      for (int b = a; b < 3; ++b) {
        cov[a][b] = static_cast<double>(n * cross[a][b] - sum[a] * sum[b]) / n2;
        cov[b][a] = cov[a][b];
      }
    }
  }

  double mean_of(const std::array<double, 3>& w) const {
    return w[0] * mean[0] + w[1] * mean[1] + w[2] * mean[2];
  }

  double variance_of(const std::array<double, 3>& w) const {
    double v = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) v += w[a] * w[b] * cov[a][b];
    return std::max(0.0, v);
  }
};

double variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}

class ClampedPlane {
 public:
  ClampedPlane(const std::vector<double>& data, int w, int h) : data_(data), w_(w), h_(h) {}
  double operator()(int x, int y) const {
    x = std::clamp(x, 0, w_ - 1);
    y = std::clamp(y, 0, h_ - 1);
    return data_[static_cast<std::size_t>(y) * w_ + x];
  }

 private:
  const std::vector<double>& data_;
  int w_, h_;
};

}  // namespace

FeatureVector features(const Raster& img) {
  constexpr std::array<double, 3> kLuma{0.299, 0.587, 0.114};
  constexpr std::array<double, 3> kRedGreen{1.0, -1.0, 0.0};
  constexpr std::array<double, 3> kYellowBlue{0.5, 0.5, -1.0};

  FeatureVector f;
  const ChannelMoments m(img);
  f.brightness = m.mean_of(kLuma);
  f.contrast = std::sqrt(m.variance_of(kLuma));

  const double mrg = m.mean_of(kRedGreen);
  const double myb = m.mean_of(kYellowBlue);
  f.colorfulness = std::sqrt(m.variance_of(kRedGreen) + m.variance_of(kYellowBlue)) +
                   0.3 * std::sqrt(mrg * mrg + myb * myb);

  const int w = img.width();
  const int h = img.height();
  const auto y = luma_plane(img);
  const ClampedPlane p(y, w, h);
  std::vector<double> lap(y.size()), grad(y.size());
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * w + i;
      const double c = p(i, j);
      lap[k] = (p(i - 1, j) - c) + (p(i + 1, j) - c) + (p(i, j - 1) - c) + (p(i, j + 1) - c);
      const double gx = (p(i + 1, j - 1) - p(i - 1, j - 1)) + 2.0 * (p(i + 1, j) - p(i - 1, j)) +
                        (p(i + 1, j + 1) - p(i - 1, j + 1));
      const double gy = (p(i - 1, j + 1) - p(i - 1, j - 1)) + 2.0 * (p(i, j + 1) - p(i, j - 1)) +
                        (p(i + 1, j + 1) - p(i + 1, j - 1));
      grad[k] = std::sqrt(gx * gx + gy * gy);
    }
  f.sharpness = variance(lap);
  f.spatial_information = std::sqrt(variance(grad));
  return f;
}

}  // namespace jndkit
