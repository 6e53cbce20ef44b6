#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "jndkit/codec.hpp"
#include "jndkit/distort.hpp"
#include "jndkit/errors.hpp"
#include "jndkit/ladder.hpp"
#include "jndkit/qr.hpp"
#include "jndkit/quality.hpp"
#include "jndkit/rng.hpp"
#include "jndkit/stimulus.hpp"
#include "jndkit/text_attack.hpp"

using namespace jndkit;
namespace fs = std::filesystem;

namespace {

Raster fixture(const char* name) { return read_image(std::string(JNDKIT_FIXTURE_DIR) + "/" + name); }

Raster random_raster(int w, int h, std::uint64_t seed) {
  Rng rng(seed);
  Raster img(w, h);
  for (auto& s : img.samples()) s = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

double mean_luma(const Raster& img) {
  double acc = 0;
  for (double v : luma_plane(img)) acc += v;
  return acc / static_cast<double>(img.pixel_count());
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::NotFound;
}

const std::string kHundredChars =
    "The quick brown fox jumps over the lazy dog while the curious cat watches from the old wooden fence.";

}  // namespace

TEST(Ladder, ParamEndpointsAreExact) {
  const auto contrast = default_ladder(DistortionKind::Contrast);
  EXPECT_EQ(param_for_level(contrast, 1), 5.0);
  EXPECT_EQ(param_for_level(contrast, 50), 0.5);
  const auto blur = default_ladder(DistortionKind::Blur);
  EXPECT_EQ(param_for_level(blur, 1), 1.0);
  EXPECT_EQ(param_for_level(blur, 50), 10.0);
  EXPECT_EQ(param_for_level(default_ladder(DistortionKind::Jpeg), 41), 60.0);
  EXPECT_EQ(param_for_level(default_ladder(DistortionKind::Mask), 50), 0.25);
  EXPECT_EQ(param_for_level(default_ladder(DistortionKind::WatermarkQr), 50), 0.5);
  for (int k = 0; k <= static_cast<int>(DistortionKind::TextSentence); ++k) {
    const auto spec = default_ladder(static_cast<DistortionKind>(k));
    if (spec.kind == DistortionKind::Jpeg) continue;
    EXPECT_EQ(param_for_level(spec, 1), spec.param_start) << to_string(spec.kind);
    EXPECT_EQ(param_for_level(spec, spec.level_count), spec.param_end) << to_string(spec.kind);
  }
}

TEST(Ladder, LinearInterior) {
  const auto blur = default_ladder(DistortionKind::Blur);
  EXPECT_NEAR(param_for_level(blur, 2), 1.0 + 9.0 / 49.0, 1e-12);
  const auto jpeg = default_ladder(DistortionKind::Jpeg);
  EXPECT_EQ(param_for_level(jpeg, 1), 100.0);
  EXPECT_EQ(param_for_level(jpeg, 100), 1.0);
}

TEST(Ladder, LevelOutOfRange) {
  const auto spec = default_ladder(DistortionKind::Blur);
  EXPECT_EQ(code_of([&] { param_for_level(spec, 0); }), ErrorCode::LevelOutOfRange);
  EXPECT_EQ(code_of([&] { param_for_level(spec, 51); }), ErrorCode::LevelOutOfRange);
}

TEST(Ladder, Validation) {
  auto spec = default_ladder(DistortionKind::Blur);
  EXPECT_NO_THROW(validate(spec));
  spec.level_count = 1;
  EXPECT_EQ(code_of([&] { validate(spec); }), ErrorCode::MalformedManifest);
  spec = default_ladder(DistortionKind::Mask);
  spec.param_end = 0.3;
  EXPECT_EQ(code_of([&] { validate(spec); }), ErrorCode::MalformedManifest);
  spec = default_ladder(DistortionKind::Contrast);
  spec.param_end = spec.param_start;
  EXPECT_EQ(code_of([&] { validate(spec); }), ErrorCode::MalformedManifest);
}

TEST(Ladder, KindNamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(DistortionKind::TextSentence); ++k) {
    const auto kind = static_cast<DistortionKind>(k);
    EXPECT_EQ(parse_distortion_kind(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_distortion_kind("sepia"));
}

TEST(Contrast, MidpointIsFixed) {
  for (double kappa : {0.5, 1.0, 2.5, 5.0}) EXPECT_DOUBLE_EQ(sigmoid_contrast(0.5, kappa), 0.5);
  const Raster mid = Raster::uniform(4, 4, 128, 128, 128);
  for (double kappa : {0.5, 5.0}) EXPECT_EQ(apply_contrast(mid, kappa), mid);
}

TEST(Contrast, HighEndAtKappaFive) {
  EXPECT_NEAR(sigmoid_contrast(1.0, 5.0), 1.0 / (1.0 + std::exp(-2.5)), 1e-15);
  EXPECT_NEAR(sigmoid_contrast(1.0, 5.0), 0.9241, 1e-4);
}

TEST(Contrast, LowKappaShrinksRange) {
  const Raster img = fixture("rocket.png");
  auto range = [](const Raster& r) {
    int lo = 255, hi = 0;
    for (auto s : r.samples()) lo = std::min<int>(lo, s), hi = std::max<int>(hi, s);
    return hi - lo;
  };
  EXPECT_LT(range(apply_contrast(img, 0.5)), range(apply_contrast(img, 5.0)));
}

TEST(Blur, RadiusZeroIsIdentity) {
  const Raster img = random_raster(20, 20, 1);
  EXPECT_EQ(apply_blur(img, 0.0), img);
}

TEST(Blur, ConstantImageIsFixed) {
  const Raster img = Raster::uniform(17, 9, 10, 100, 250);
  for (double r : {0.5, 2.0, 7.5}) EXPECT_EQ(apply_blur(img, r), img);
}

TEST(Blur, ImpulseResponseMatchesKernelCenter) {
  Raster img(31, 31, 0);
  for (int c = 0; c < 3; ++c) img.at(15, 15, c) = 255;
  // sigma 2, taps -6..6
  double sum = 0;
  for (int i = -6; i <= 6; ++i) sum += std::exp(-(i * i) / 8.0);
  const double center = 1.0 / sum;
  const Raster out = apply_blur(img, 2.0);
  EXPECT_NEAR(out.at(15, 15, 0), center * center * 255.0, 1.0);
}

TEST(Brightness, UnitFactorIsRoundTrip) {
  const Raster img = random_raster(16, 16, 4);
  const Raster out = apply_brightness(img, 1.0);
  for (std::size_t i = 0; i < img.samples().size(); ++i)
    EXPECT_LE(std::abs(out.samples()[i] - img.samples()[i]), 1);
  const Raster col = apply_color(img, 1.0);
  for (std::size_t i = 0; i < img.samples().size(); ++i)
    EXPECT_LE(std::abs(col.samples()[i] - img.samples()[i]), 1);
}

TEST(Brightness, DimmingLowersMeanLuma) {
  const Raster img = fixture("coffee.png");
  EXPECT_LT(mean_luma(apply_brightness(img, 0.1)), mean_luma(img));
}

TEST(Color, GrayStaysGray) {
  Raster gray(8, 8);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      for (int c = 0; c < 3; ++c) gray.at(x, y, c) = static_cast<std::uint8_t>(x * 30 + y);
  EXPECT_EQ(apply_color(gray, 5.0), gray);
}

TEST(Noise, ZeroVarianceIsIdentity) {
  const Raster img = random_raster(9, 9, 2);
  EXPECT_EQ(apply_noise(img, 0.0, 77), img);
}

TEST(Noise, SeededDeterminism) {
  const Raster img = random_raster(9, 9, 2);
  EXPECT_EQ(apply_noise(img, 20.0, 77), apply_noise(img, 20.0, 77));
  EXPECT_NE(apply_noise(img, 20.0, 77), apply_noise(img, 20.0, 78));
}

TEST(Noise, SampleVarianceMatches) {
  const Raster img = Raster::uniform(200, 200, 128, 128, 128);
  const Raster out = apply_noise(img, 50.0, 2024);
  double s1 = 0, s2 = 0;
  for (auto v : out.samples()) {
    const double d = v - 128.0;
    s1 += d;
    s2 += d * d;
  }
  const double n = static_cast<double>(out.samples().size());
  ASSERT_GE(n, 1e5);
  const double var = s2 / n - (s1 / n) * (s1 / n);
  EXPECT_NEAR(var, 50.0, 0.15 * 50.0);
}

TEST(Mask, QuarterSideOn400) {
  const auto m = mask_placement(400, 400, 0.25, 5);
  EXPECT_EQ(m.width, 100);
  EXPECT_EQ(m.height, 100);
  EXPECT_GE(m.x, 0);
  EXPECT_LE(m.x + m.width, 400);
  EXPECT_LE(m.y + m.height, 400);
}

TEST(Mask, SameSeedSamePosition) {
  const auto a = mask_placement(300, 200, 0.1, 42);
  const auto b = mask_placement(300, 200, 0.1, 42);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
}

TEST(Mask, ChangedPixelCount) {
  const Raster img = Raster::uniform(400, 300, 200, 190, 180);
  const Raster out = apply_mask(img, 0.01, 9);
  int changed = 0;
  for (int y = 0; y < 300; ++y)
    for (int x = 0; x < 400; ++x)
      if (out.at(x, y, 0) != img.at(x, y, 0) || out.at(x, y, 1) != img.at(x, y, 1) ||
          out.at(x, y, 2) != img.at(x, y, 2))
        ++changed;
  EXPECT_EQ(changed, 4 * 3);
  EXPECT_THROW(apply_mask(img, 0.3, 1), Error);
}

TEST(Qr, MatchesReferenceEncoder) {
  std::ifstream in(std::string(JNDKIT_FIXTURE_DIR) + "/qr_golden.txt");
  ASSERT_TRUE(in);
  std::string payload;
  int cases = 0;
  while (std::getline(in, payload)) {
    int mask = 0, version = 0, size = 0;
    in >> mask >> version >> size;
    in.ignore();
    const QrCode code = QrCode::encode(payload, mask);
    EXPECT_EQ(code.version(), version) << payload;
    ASSERT_EQ(code.size(), size);
    int mismatches = 0;
    for (int y = 0; y < size; ++y) {
      std::string row;
      std::getline(in, row);
      for (int x = 0; x < size; ++x) mismatches += (row[x] == '1') != code.module(x, y);
    }
    EXPECT_EQ(mismatches, 0) << "payload length " << payload.size();
    ++cases;
  }
  EXPECT_EQ(cases, 4);
}

TEST(Qr, AutomaticMaskAndCapacity) {
  const QrCode a = QrCode::encode("jndkit watermark");
  EXPECT_GE(a.mask(), 0);
  EXPECT_LE(a.mask(), 7);
  EXPECT_EQ(QrCode::encode("jndkit watermark").mask(), a.mask());
  EXPECT_EQ(code_of([] { QrCode::encode(std::string(3000, 'a')); }), ErrorCode::RenderFailure);
}

TEST(Watermark, ChangeBoundedByAlpha) {
  const Raster img = fixture("astronaut.png");
  for (auto kind : {WatermarkKind::QrCode, WatermarkKind::Text}) {
    const Raster out = apply_watermark(img, 0.01, kind, "jndkit");
    int worst = 0;
    for (std::size_t i = 0; i < img.samples().size(); ++i)
      worst = std::max(worst, std::abs(out.samples()[i] - img.samples()[i]));
    EXPECT_LE(worst, static_cast<int>(std::ceil(0.01 * 255)));
    EXPECT_GT(worst, 0);
  }
}

TEST(Watermark, HalfAlphaOverBlack) {
  const Raster black(100, 100, 0);
  const Raster qr = apply_watermark(black, 0.5, WatermarkKind::QrCode, "jndkit");
  // (78, 78) is the quiet zone's top-left pixel: a white mark over black.
  EXPECT_EQ(qr.at(78, 78, 0), 128);
  const Raster text = apply_watermark(black, 0.5, WatermarkKind::Text, "CONFIDENTIAL");
  int marked = 0;
  for (auto s : text.samples()) {
    EXPECT_TRUE(s == 0 || s == 128);
    marked += s == 128;
  }
  EXPECT_GT(marked, 0);
}

TEST(Watermark, Deterministic) {
  const Raster img = random_raster(64, 48, 3);
  EXPECT_EQ(apply_watermark(img, 0.3, WatermarkKind::QrCode, "abc"),
            apply_watermark(img, 0.3, WatermarkKind::QrCode, "abc"));
  EXPECT_EQ(apply_watermark(img, 0.3, WatermarkKind::Text, "abc"),
            apply_watermark(img, 0.3, WatermarkKind::Text, "abc"));
}

TEST(TextAttack, CharBudget) {
  ASSERT_EQ(kHundredChars.size(), 100u);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = perturb_text(kHundredChars, 0.10, TextAttack::Char, seed);
    EXPECT_EQ(r.manipulated, 10);
    std::set<std::size_t> positions;
    for (const auto& e : r.edits) positions.insert(e.position);
    EXPECT_EQ(positions.size(), 10u);
    EXPECT_LE(r.text.size(), 110u);
    EXPECT_GE(r.text.size(), 90u);
  }
}

TEST(TextAttack, SentenceInjectsPrintableAscii) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = perturb_text(kHundredChars, 0.3, TextAttack::Sentence, seed);
    EXPECT_EQ(r.injected_length, 30u);
    for (char c : r.text.substr(r.injected_offset, r.injected_length)) {
      EXPECT_GE(static_cast<int>(c), 33);
      EXPECT_LE(static_cast<int>(c), 126);
    }
    std::string restored = r.text;
    restored.erase(r.injected_offset, r.injected_length);
    EXPECT_EQ(restored, kHundredChars);
  }
}

TEST(TextAttack, SameSeedSameOutput) {
  for (auto kind : {TextAttack::Char, TextAttack::Sentence})
    EXPECT_EQ(perturb_text(kHundredChars, 0.2, kind, 7).text, perturb_text(kHundredChars, 0.2, kind, 7).text);
}

TEST(TextAttack, WordNeedsProvider) {
  EXPECT_EQ(code_of([] { perturb_text("hello there world", 0.5, TextAttack::Word, 1); }), ErrorCode::MissingProvider);
}

TEST(TextAttack, WordReplacesThroughProvider) {
  struct Upper : SynonymProvider {
    std::optional<std::string> synonym(std::string_view word, std::string_view) override {
      std::string s(word);
      for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      return s;
    }
  } provider;
  const auto r = perturb_text("one two three four five six seven eight nine ten", 0.3, TextAttack::Word, 3, &provider);
  EXPECT_EQ(r.manipulated, 3);
  int upper_words = 0;
  for (std::size_t i = 0; i < r.text.size(); ++i)
    if (std::isupper(static_cast<unsigned char>(r.text[i])) && (i == 0 || r.text[i - 1] == ' ')) ++upper_words;
  EXPECT_EQ(upper_words, 3);
}

TEST(TextAttack, PlaceholdersExcluded) {
  const std::string text = "<image 1> Describe the picture in detail please.";
  EXPECT_EQ(countable_length(text), text.size() - 9);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = perturb_text(text, 1.0, TextAttack::Char, seed);
    EXPECT_EQ(r.text.rfind("<image 1>", 0), 0u);
    EXPECT_EQ(r.manipulated, static_cast<int>(text.size() - 9));
  }
}

TEST(BuildLadder, SizesAndShapes) {
  const Reference ref{"small", random_raster(24, 16, 8)};
  const auto contrast = build_ladder(ref, default_ladder(DistortionKind::Contrast));
  EXPECT_EQ(contrast.size(), 50u);
  const auto jpeg = build_ladder(ref, default_ladder(DistortionKind::Jpeg));
  EXPECT_EQ(jpeg.size(), 100u);
  for (const auto* ladder : {&contrast, &jpeg})
    for (const auto& s : *ladder) {
      EXPECT_GE(s.level, 1);
      const auto& img = std::get<Raster>(s.payload);
      EXPECT_TRUE(img.same_shape(std::get<Raster>(ref.content)));
    }
  EXPECT_EQ(jpeg[40].param_value, 60.0);
  EXPECT_TRUE(is_jpeg(jpeg[40].encoded));
  EXPECT_EQ(stored_extension(jpeg[40]), "jpg");
  EXPECT_EQ(stored_extension(contrast[0]), "png");
}

TEST(BuildLadder, ParamMatchesSchedule) {
  const Reference ref{"r", random_raster(8, 8, 1)};
  for (auto kind : {DistortionKind::Noise, DistortionKind::Mask, DistortionKind::WatermarkText}) {
    const auto spec = default_ladder(kind, 11);
    const auto ladder = build_ladder(ref, spec);
    for (const auto& s : ladder) EXPECT_EQ(s.param_value, param_for_level(spec, s.level));
  }
}

TEST(BuildLadder, RegenerationIsBitIdentical) {
  const Reference ref{"r", random_raster(32, 32, 1)};
  for (auto kind : {DistortionKind::Noise, DistortionKind::Mask, DistortionKind::WatermarkQr}) {
    const auto spec = default_ladder(kind, 99);
    for (int level : {1, 17, 50})
      EXPECT_EQ(stored_bytes(make_stimulus(ref, spec, level)), stored_bytes(make_stimulus(ref, spec, level)));
  }
  const Reference text{"t", kHundredChars};
  const auto spec = default_ladder(DistortionKind::TextChar, 5);
  EXPECT_EQ(std::get<std::string>(make_stimulus(text, spec, 30).payload),
            std::get<std::string>(make_stimulus(text, spec, 30).payload));
}

TEST(BuildLadder, BlurPsnrNonIncreasing) {
  const Reference ref{"coffee", fixture("coffee.png")};
  const auto ladder = build_ladder(ref, default_ladder(DistortionKind::Blur));
  double prev = kInfinitePsnr;
  for (const auto& s : ladder) {
    const double p = psnr(std::get<Raster>(ref.content), std::get<Raster>(s.payload));
    EXPECT_LE(p, prev + 0.5) << "level " << s.level;
    prev = p;
  }
}

TEST(BuildLadder, RejectsMismatchedReference) {
  const Reference text{"t", std::string("hello world")};
  EXPECT_THROW(build_ladder(text, default_ladder(DistortionKind::Blur)), Error);
  const Reference img{"i", Raster(4, 4)};
  EXPECT_THROW(build_ladder(img, default_ladder(DistortionKind::TextChar)), Error);
  EXPECT_THROW(build_ladder(img, default_ladder(DistortionKind::Banding)), Error);
}

class IngestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("jndkit_ingest_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(IngestTest, FovDegreesBecomeLevels) {
  IngestEntry entry{"scene", DistortionKind::FovAngle, {}};
  for (int deg = 1; deg <= 50; ++deg) {
    const fs::path p = dir_ / ("angle_" + std::to_string(deg) + ".png");
    write_png(p, Raster::uniform(4, 4, static_cast<std::uint8_t>(deg), 0, 0));
    entry.files.push_back({p, static_cast<double>(deg)});
  }
  const auto ladder = ingest_ladder(entry);
  ASSERT_EQ(ladder.size(), 50u);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(ladder[i].param_value, i + 1.0);
    EXPECT_EQ(ladder[i].level, i + 1);
    EXPECT_EQ(ladder[i].encoded, read_file(entry.files[i].path));
  }
}

TEST_F(IngestTest, Errors) {
  EXPECT_EQ(code_of([] { ingest_ladder({"x", DistortionKind::Banding, {}}); }), ErrorCode::EmptyLadder);
  const fs::path p = dir_ / "a.png";
  write_png(p, Raster(2, 2));
  EXPECT_EQ(code_of([&] { ingest_ladder({"x", DistortionKind::Banding, {{p, 1.0}, {p, 1.0}}}); }),
            ErrorCode::NonMonotoneLevels);
  EXPECT_EQ(code_of([&] { ingest_ladder({"x", DistortionKind::Banding, {{p, 1.0}, {dir_ / "missing.png", 2.0}}}); }),
            ErrorCode::MissingFile);
}
