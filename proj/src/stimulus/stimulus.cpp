#include "jndkit/stimulus.hpp"

#include "jndkit/distort.hpp"
#include "jndkit/errors.hpp"
#include "jndkit/rng.hpp"

namespace jndkit {

namespace {

const Raster& image_of(const Reference& reference, DistortionKind kind) {
  if (const auto* img = std::get_if<Raster>(&reference.content)) return *img;
  fail(ErrorCode::InvalidArgument,
       std::string(to_string(kind)) + " needs an image reference, '" + reference.id + "' is text");
}

const std::string& text_of(const Reference& reference, DistortionKind kind) {
  if (const auto* text = std::get_if<std::string>(&reference.content)) return *text;
  fail(ErrorCode::InvalidArgument,
       std::string(to_string(kind)) + " needs a text reference, '" + reference.id + "' is an image");
}

}  // namespace

std::uint64_t stimulus_seed(const LadderSpec& spec, std::string_view reference_id, int level) noexcept {
  return derive_seed(spec.seed,
                     {fnv1a(reference_id), static_cast<std::uint64_t>(spec.kind), static_cast<std::uint64_t>(level)});
}

Stimulus make_stimulus(const Reference& reference, const LadderSpec& spec, int level, const SynthesisOptions& options) {
  if (is_ingested(spec.kind)) {
    fail(ErrorCode::InvalidArgument, std::string(to_string(spec.kind)) + " ladders are ingested, not synthesized");
  }
  Stimulus s;
  s.reference_id = reference.id;
  s.kind = spec.kind;
  s.level = level;
  s.param_value = param_for_level(spec, level);
  const std::uint64_t seed = stimulus_seed(spec, reference.id, level);
  const double p = s.param_value;

  switch (spec.kind) {
    case DistortionKind::Blur: s.payload = apply_blur(image_of(reference, spec.kind), p); break;
    case DistortionKind::Brightness: s.payload = apply_brightness(image_of(reference, spec.kind), p); break;
    case DistortionKind::Color: s.payload = apply_color(image_of(reference, spec.kind), p); break;
    case DistortionKind::Contrast: s.payload = apply_contrast(image_of(reference, spec.kind), p); break;
    case DistortionKind::Noise: s.payload = apply_noise(image_of(reference, spec.kind), p, seed); break;
    case DistortionKind::Mask: s.payload = apply_mask(image_of(reference, spec.kind), p, seed); break;
    case DistortionKind::WatermarkQr:
      s.payload = apply_watermark(image_of(reference, spec.kind), p, WatermarkKind::QrCode, spec.payload);
      break;
    case DistortionKind::WatermarkText:
      s.payload = apply_watermark(image_of(reference, spec.kind), p, WatermarkKind::Text, spec.payload);
      break;
    case DistortionKind::Jpeg: {
      auto jpeg = encode_jpeg(image_of(reference, spec.kind), static_cast<int>(p));
      s.encoded = std::move(jpeg.bytes);
      s.payload = std::move(jpeg.decoded);
      break;
    }
    case DistortionKind::TextChar:
      s.payload = perturb_text(text_of(reference, spec.kind), p, TextAttack::Char, seed).text;
      break;
    case DistortionKind::TextWord:
      s.payload = perturb_text(text_of(reference, spec.kind), p, TextAttack::Word, seed, options.synonyms).text;
      break;
    case DistortionKind::TextSentence:
      s.payload = perturb_text(text_of(reference, spec.kind), p, TextAttack::Sentence, seed).text;
      break;
    default: break;
  }
  return s;
}

std::vector<Stimulus> build_ladder(const Reference& reference, const LadderSpec& spec, const SynthesisOptions& options) {
  validate(spec);
  std::vector<Stimulus> ladder;
  ladder.reserve(static_cast<std::size_t>(spec.level_count));
  for (int level = 1; level <= spec.level_count; ++level) ladder.push_back(make_stimulus(reference, spec, level, options));
  return ladder;
}

Bytes stored_bytes(const Content& content) {
  if (const auto* img = std::get_if<Raster>(&content)) return encode_png(*img);
  const auto& text = std::get<std::string>(content);
  return Bytes(text.begin(), text.end());
}

Bytes stored_bytes(const Stimulus& stimulus) {
  if (!stimulus.encoded.empty()) return stimulus.encoded;
  return stored_bytes(stimulus.payload);
}

std::string_view stored_extension(const Stimulus& stimulus) {
  if (!stimulus.encoded.empty()) return is_jpeg(stimulus.encoded) ? "jpg" : (is_png(stimulus.encoded) ? "png" : "bin");
  return std::holds_alternative<Raster>(stimulus.payload) ? "png" : "txt";
}

std::vector<Stimulus> ingest_ladder(const IngestEntry& entry) {
  if (entry.files.empty()) {
    fail(ErrorCode::EmptyLadder, "ingested ladder for '" + entry.reference_id + "' lists no files");
  }
  for (std::size_t i = 1; i < entry.files.size(); ++i) {
    if (!(entry.files[i].level > entry.files[i - 1].level)) {
      fail(ErrorCode::NonMonotoneLevels, "ingested levels for '" + entry.reference_id + "' must strictly increase");
    }
  }
  std::vector<Stimulus> ladder;
  int index = 0;
  for (const auto& f : entry.files) {
    if (!std::filesystem::exists(f.path)) fail(ErrorCode::MissingFile, f.path.string());
    Stimulus s;
    s.reference_id = entry.reference_id;
    s.kind = entry.kind;
    s.level = ++index;
    s.param_value = f.level;
    s.encoded = read_file(f.path);
    s.payload = decode_image(s.encoded);
    ladder.push_back(std::move(s));
  }
  return ladder;
}

}  // namespace jndkit
