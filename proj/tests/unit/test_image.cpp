#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "jndkit/codec.hpp"
#include "jndkit/color.hpp"
#include "jndkit/errors.hpp"
#include "jndkit/features.hpp"
#include "jndkit/quality.hpp"
#include "jndkit/rng.hpp"

using namespace jndkit;

namespace {

Raster random_raster(int w, int h, std::uint64_t seed) {
  Rng rng(seed);
  Raster img(w, h);
  for (auto& s : img.samples()) s = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

Raster fixture(const char* name) { return read_image(std::string(JNDKIT_FIXTURE_DIR) + "/" + name); }

}  // namespace

TEST(Raster, RejectsDegenerateDimensions) {
  EXPECT_THROW(Raster(0, 4), Error);
  EXPECT_THROW(Raster(3, 3, std::vector<std::uint8_t>(26)), Error);
}

TEST(Raster, QuantizeRoundsHalfAwayAndClamps) {
  EXPECT_EQ(quantize(127.5), 128);
  EXPECT_EQ(quantize(127.49), 127);
  EXPECT_EQ(quantize(-3.0), 0);
  EXPECT_EQ(quantize(300.0), 255);
}

TEST(Color, PureRedThroughHsv) {
  const auto hsv = rgb_to_hsv(1.0, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(hsv.hue, 0.0);
  EXPECT_DOUBLE_EQ(hsv.first, 1.0);
  EXPECT_DOUBLE_EQ(hsv.second, 1.0);
  const Raster red = Raster::uniform(1, 1, 255, 0, 0);
  EXPECT_EQ(convert_back(convert_color(red, ColorSpace::Hsv), 1, 1, ColorSpace::Hsv), red);
}

TEST(Color, MidGrayHasZeroHlsSaturation) {
  const auto px = convert_color(Raster::uniform(2, 2, 128, 128, 128), ColorSpace::Hls);
  for (const auto& p : px) EXPECT_EQ(p.second, 0.0);
}

TEST(Color, ComponentRanges) {
  const Raster img = random_raster(32, 32, 3);
  for (auto space : {ColorSpace::Hls, ColorSpace::Hsv})
    for (const auto& p : convert_color(img, space)) {
      EXPECT_GE(p.hue, 0.0);
      EXPECT_LT(p.hue, 360.0);
      EXPECT_GE(p.first, 0.0);
      EXPECT_LE(p.first, 1.0);
      EXPECT_GE(p.second, 0.0);
      EXPECT_LE(p.second, 1.0);
    }
}

TEST(Color, SpecificRoundTrip) {
  const Raster px = Raster::uniform(1, 1, 64, 128, 192);
  for (auto space : {ColorSpace::Hls, ColorSpace::Hsv}) {
    const Raster back = convert_back(convert_color(px, space), 1, 1, space);
    for (int c = 0; c < 3; ++c) EXPECT_LE(std::abs(back.at(0, 0, c) - px.at(0, 0, c)), 1);
  }
}

// Exhaustive over the 3-bit-per-channel lattice plus a dense stride-3 sweep.
TEST(Color, RoundTripWithinOneStepOnLattice) {
  std::vector<std::uint8_t> samples;
  auto push = [&samples](int r, int g, int b) {
    samples.push_back(static_cast<std::uint8_t>(r));
    samples.push_back(static_cast<std::uint8_t>(g));
    samples.push_back(static_cast<std::uint8_t>(b));
  };
  for (int r = 0; r < 8; ++r)
    for (int g = 0; g < 8; ++g)
      for (int b = 0; b < 8; ++b) push(r * 255 / 7, g * 255 / 7, b * 255 / 7);
  for (int r = 0; r < 256; r += 3)
    for (int g = 1; g < 256; g += 5)
      for (int b = 2; b < 256; b += 7) push(r, g, b);
  const int n = static_cast<int>(samples.size() / 3);
  const Raster img(n, 1, samples);
  for (auto space : {ColorSpace::Hls, ColorSpace::Hsv}) {
    const Raster back = convert_back(convert_color(img, space), n, 1, space);
    int worst = 0;
    for (std::size_t i = 0; i < samples.size(); ++i)
      worst = std::max(worst, std::abs(back.samples()[i] - samples[i]));
    EXPECT_LE(worst, 1);
  }
}

TEST(Quality, IdenticalImages) {
  const Raster a = random_raster(40, 24, 9);
  const auto q = quality(a, a);
  EXPECT_EQ(q.psnr, kInfinitePsnr);
  EXPECT_NEAR(q.ssim, 1.0, 1e-9);
}

TEST(Quality, UniformOffsetClosedForms) {
  const Raster a = Raster::uniform(64, 64, 128, 128, 128);
  const Raster b = Raster::uniform(64, 64, 138, 138, 138);
  // MSE is exactly 100 on every sample.
  EXPECT_DOUBLE_EQ(mse(a, b), 100.0);
  EXPECT_NEAR(psnr(a, b), 10.0 * std::log10(255.0 * 255.0 / 100.0), 1e-12);
  EXPECT_NEAR(psnr(a, b), 28.13, 0.01);
  // Zero variance leaves only the luminance term.
  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double expected = (2.0 * 128 * 138 + c1) / (128.0 * 128 + 138.0 * 138 + c1);
  EXPECT_NEAR(ssim(a, b), expected, 1e-9);
  EXPECT_NEAR(ssim(a, b), 0.9972, 0.0005);
}

TEST(Quality, SsimIsSymmetric) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Raster a = random_raster(33, 17, seed);
    const Raster b = random_raster(33, 17, seed + 100);
    EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
    EXPECT_GE(ssim(a, b), -1.0);
    EXPECT_LE(ssim(a, b), 1.0);
  }
}

TEST(Quality, SmallImagesUseOneWindow) {
  const Raster a = random_raster(5, 3, 1);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
}

TEST(Quality, DimensionMismatch) {
  try {
    quality(Raster(4, 4), Raster(4, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Features, ConstantImage) {
  const auto f = features(Raster::uniform(16, 16, 90, 140, 30));
  EXPECT_EQ(f.contrast, 0.0);
  EXPECT_EQ(f.sharpness, 0.0);
  EXPECT_EQ(f.spatial_information, 0.0);
}

TEST(Features, GrayHasNoColorfulness) {
  EXPECT_EQ(features(Raster::uniform(8, 8, 77, 77, 77)).colorfulness, 0.0);
  Raster ramp(32, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 32; ++x)
      for (int c = 0; c < 3; ++c) ramp.at(x, y, c) = static_cast<std::uint8_t>(x * 8);
  EXPECT_EQ(features(ramp).colorfulness, 0.0);
}

// Straight-loop oracle: per-pixel luma, explicit border replication and
// single-pass E[x^2] - E[x]^2 variances.
TEST(Features, CheckerboardMatchesPixelLoopOracle) {
  const int w = 12, h = 10;
  Raster board(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const bool on = ((x / 2) + (y / 2)) % 2 == 0;
      board.at(x, y, 0) = on ? 230 : 20;
      board.at(x, y, 1) = on ? 200 : 40;
      board.at(x, y, 2) = on ? 10 : 180;
    }
  auto Y = [&](int x, int y) {
    x = x < 0 ? 0 : (x >= w ? w - 1 : x);
    y = y < 0 ? 0 : (y >= h ? h - 1 : y);
    return 0.299 * board.at(x, y, 0) + 0.587 * board.at(x, y, 1) + 0.114 * board.at(x, y, 2);
  };
  double s1 = 0, s2 = 0, g1 = 0, g2 = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double lap = Y(x - 1, y) + Y(x + 1, y) + Y(x, y - 1) + Y(x, y + 1) - 4 * Y(x, y);
      s1 += lap;
      s2 += lap * lap;
      const double gx = -Y(x - 1, y - 1) - 2 * Y(x - 1, y) - Y(x - 1, y + 1) + Y(x + 1, y - 1) + 2 * Y(x + 1, y) +
                        Y(x + 1, y + 1);
      const double gy = -Y(x - 1, y - 1) - 2 * Y(x, y - 1) - Y(x + 1, y - 1) + Y(x - 1, y + 1) + 2 * Y(x, y + 1) +
                        Y(x + 1, y + 1);
      const double g = std::sqrt(gx * gx + gy * gy);
      g1 += g;
      g2 += g * g;
    }
  const double n = w * h;
  const double sharp = s2 / n - (s1 / n) * (s1 / n);
  const double si = std::sqrt(g2 / n - (g1 / n) * (g1 / n));
  const auto f = features(board);
  EXPECT_NEAR(f.sharpness, sharp, 1e-6 * sharp);
  EXPECT_NEAR(f.spatial_information, si, 1e-6 * si);
  EXPECT_GT(f.sharpness, 0.0);
}

TEST(Features, HorizontalFlipInvariance) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Raster a = random_raster(23, 19, seed);
    const auto f = features(a);
    const auto g = features(a.flipped_horizontally());
    EXPECT_EQ(f.brightness, g.brightness);
    EXPECT_EQ(f.contrast, g.contrast);
    EXPECT_EQ(f.colorfulness, g.colorfulness);
    EXPECT_NEAR(f.sharpness, g.sharpness, 1e-9);
    EXPECT_NEAR(f.spatial_information, g.spatial_information, 1e-9);
  }
}

TEST(Features, AllFinite) {
  const auto f = features(fixture("coffee.png"));
  for (double v : {f.brightness, f.contrast, f.colorfulness, f.sharpness, f.spatial_information}) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
  }
}

TEST(Jpeg, HighQualityBeatsLowQuality) {
  const Raster img = fixture("chelsea.png");
  const auto hi = encode_jpeg(img, 100);
  const auto lo = encode_jpeg(img, 10);
  EXPECT_GE(psnr(img, hi.decoded), psnr(img, lo.decoded));
  EXPECT_TRUE(is_jpeg(hi.bytes));
  EXPECT_EQ(decode_jpeg(hi.bytes), hi.decoded);
}

TEST(Jpeg, KeepsDimensions) {
  const Raster img = random_raster(37, 21, 5);
  const auto j = encode_jpeg(img, 60);
  EXPECT_EQ(j.decoded.width(), 37);
  EXPECT_EQ(j.decoded.height(), 21);
}

TEST(Jpeg, LowQualityIsSmaller) {
  const Raster img = fixture("astronaut.png");
  ASSERT_EQ(img.width(), 256);
  EXPECT_LT(encode_jpeg(img, 10).size_bytes(), encode_jpeg(img, 90).size_bytes());
}

TEST(Jpeg, RejectsBadQuality) {
  EXPECT_THROW(encode_jpeg(Raster(4, 4), 0), Error);
  EXPECT_THROW(encode_jpeg(Raster(4, 4), 101), Error);
}

TEST(Png, LosslessAndDeterministic) {
  const Raster img = random_raster(19, 7, 11);
  const Bytes a = encode_png(img);
  EXPECT_EQ(a, encode_png(img));
  EXPECT_EQ(decode_png(a), img);
  EXPECT_EQ(decode_image(a), img);
  EXPECT_THROW(decode_image(Bytes{1, 2, 3}), Error);
}
