#include "jndkit/ladder.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "jndkit/errors.hpp"

namespace jndkit {

namespace {

constexpr std::array<std::pair<DistortionKind, std::string_view>, 15> kNames = {{
    {DistortionKind::Blur, "blur"},
    {DistortionKind::Brightness, "brightness"},
    {DistortionKind::Color, "color"},
    {DistortionKind::Contrast, "contrast"},
    {DistortionKind::Jpeg, "jpeg"},
    {DistortionKind::Noise, "noise"},
    {DistortionKind::Banding, "banding"},
    {DistortionKind::Mask, "mask"},
    {DistortionKind::WatermarkQr, "watermark_qr"},
    {DistortionKind::WatermarkText, "watermark_text"},
    {DistortionKind::FovAngle, "fov_angle"},
    {DistortionKind::FovDistance, "fov_distance"},
    {DistortionKind::TextChar, "text_char"},
    {DistortionKind::TextWord, "text_word"},
    {DistortionKind::TextSentence, "text_sentence"},
}};

[[noreturn]] void reject(const LadderSpec& spec, const std::string& why) {
  fail(ErrorCode::MalformedManifest, std::string(to_string(spec.kind)) + " ladder: " + why);
}

void require_range(const LadderSpec& spec, double lo, bool lo_open, double hi) {
  for (double v : {spec.param_start, spec.param_end}) {
    const bool ok = (lo_open ? v > lo : v >= lo) && v <= hi && std::isfinite(v);
    if (!ok) reject(spec, "parameter " + std::to_string(v) + " outside the admissible range");
  }
}

}  // namespace

std::string_view to_string(DistortionKind kind) noexcept {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<DistortionKind> parse_distortion_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

bool is_ingested(DistortionKind kind) noexcept {
  return kind == DistortionKind::Banding || kind == DistortionKind::FovAngle || kind == DistortionKind::FovDistance;
}

bool is_text_kind(DistortionKind kind) noexcept {
  return kind == DistortionKind::TextChar || kind == DistortionKind::TextWord || kind == DistortionKind::TextSentence;
}

bool is_stochastic(DistortionKind kind) noexcept {
  return kind == DistortionKind::Noise || kind == DistortionKind::Mask || is_text_kind(kind);
}

LadderSpec default_ladder(DistortionKind kind, std::uint64_t seed) {
  LadderSpec s;
  s.kind = kind;
  s.seed = seed;
  s.level_count = 50;
  switch (kind) {
    case DistortionKind::Blur: s.param_start = 1.0, s.param_end = 10.0; break;
    case DistortionKind::Brightness: s.param_start = 1.0, s.param_end = 0.1; break;
    case DistortionKind::Color: s.param_start = 1.0, s.param_end = 5.0; break;
    case DistortionKind::Contrast: s.param_start = 5.0, s.param_end = 0.5; break;
    case DistortionKind::Jpeg: s.level_count = 100, s.param_start = 100.0, s.param_end = 1.0; break;
    case DistortionKind::Noise: s.param_start = 1.0, s.param_end = 50.0; break;
    case DistortionKind::Banding: s.level_count = 100, s.param_start = 1.0, s.param_end = 100.0; break;
    case DistortionKind::Mask: s.param_start = 0.01, s.param_end = 0.25; break;
    case DistortionKind::WatermarkQr:
    case DistortionKind::WatermarkText: s.param_start = 0.01, s.param_end = 0.50; break;
    case DistortionKind::FovAngle:
    case DistortionKind::FovDistance: s.param_start = 1.0, s.param_end = 50.0; break;
    case DistortionKind::TextChar:
    case DistortionKind::TextWord:
    case DistortionKind::TextSentence: s.param_start = 0.01, s.param_end = 0.50; break;
  }
  return s;
}

void validate(const LadderSpec& spec) {
  if (spec.level_count < 2) reject(spec, "level_count must be at least 2");
  if (is_ingested(spec.kind)) return;
  if (spec.kind == DistortionKind::Jpeg) {
    if (spec.level_count > 100) reject(spec, "JPEG ladders have at most 100 levels");
    return;
  }
  if (spec.param_start == spec.param_end) reject(spec, "param_start must differ from param_end");
  switch (spec.kind) {
    case DistortionKind::Contrast:
    case DistortionKind::Brightness:
    case DistortionKind::Color: require_range(spec, 0.0, true, 1e6); break;
    case DistortionKind::Blur:
    case DistortionKind::Noise: require_range(spec, 0.0, false, 1e6); break;
    case DistortionKind::Mask: require_range(spec, 0.0, true, 0.25); break;
    case DistortionKind::WatermarkQr:
    case DistortionKind::WatermarkText: require_range(spec, 0.0, true, 0.5); break;
    case DistortionKind::TextChar:
    case DistortionKind::TextWord:
    case DistortionKind::TextSentence: require_range(spec, 0.0, true, 1.0); break;
    default: break;
  }
}

double param_for_level(const LadderSpec& spec, int level) {
  if (level < 1 || level > spec.level_count) {
    fail(ErrorCode::LevelOutOfRange,
         "level " + std::to_string(level) + " outside [1, " + std::to_string(spec.level_count) + "]");
  }
  if (spec.kind == DistortionKind::Jpeg) return 101.0 - level;
  const double t = static_cast<double>(level - 1) / static_cast<double>(spec.level_count - 1);
  return std::lerp(spec.param_start, spec.param_end, t);
}

}  // namespace jndkit
