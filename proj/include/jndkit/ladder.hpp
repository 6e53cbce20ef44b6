#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace jndkit {

enum class DistortionKind {
  Blur,
  Brightness,
  Color,
  Contrast,
  Jpeg,
  Noise,
  Banding,
  Mask,
  WatermarkQr,
  WatermarkText,
  FovAngle,
  FovDistance,
  TextChar,
  TextWord,
  TextSentence,
};

std::string_view to_string(DistortionKind kind) noexcept;
std::optional<DistortionKind> parse_distortion_kind(std::string_view name) noexcept;

/// Banding and field-of-view ladders come from external producers.
bool is_ingested(DistortionKind kind) noexcept;
bool is_text_kind(DistortionKind kind) noexcept;
/// Kinds whose synthesis consumes the ladder seed.
bool is_stochastic(DistortionKind kind) noexcept;

/// Level-indexed parameter schedule. Level 0 is the unmodified reference and
/// is never materialized; levels 1..level_count map linearly (endpoints
/// inclusive) from param_start to param_end.
struct LadderSpec {
  DistortionKind kind = DistortionKind::Blur;
  int level_count = 50;
  double param_start = 1.0;
  double param_end = 10.0;
  std::uint64_t seed = 0;
  /// QR or text watermark content; unused by other kinds.
  std::string payload = "jndkit";

  friend bool operator==(const LadderSpec&, const LadderSpec&) = default;
};

/// The default schedule for each kind, e.g. contrast 5 -> 0.5 over 50 levels
/// and JPEG over 100 levels.
LadderSpec default_ladder(DistortionKind kind, std::uint64_t seed = 0);

/// Throws MalformedManifest describing the first violated rule.
void validate(const LadderSpec& spec);

/// Physical parameter for a level. JPEG always maps to quality factor
/// 101 - level. Throws LevelOutOfRange outside [1, level_count].
double param_for_level(const LadderSpec& spec, int level);

}  // namespace jndkit
