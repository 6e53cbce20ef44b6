#include "jndkit/perceiver.hpp"

#include <cstdio>
#include <numeric>

#include "jndkit/errors.hpp"
#include "jndkit/rng.hpp"

namespace jndkit {

namespace {

int total(const std::vector<int>& components, int level) {
  return components.empty() ? level : std::accumulate(components.begin(), components.end(), 0);
}

std::string join(const std::vector<int>& components, int level) {
  if (components.empty()) return std::to_string(level);
  std::string out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(components[i]);
  }
  return out;
}

bool is_question(const ComparisonQuery& q) { return q.tag.rfind("vqa:", 0) == 0; }

}  // namespace

std::string_view to_string(PromptMode mode) noexcept { return mode == PromptMode::Explicit ? "explicit" : "implicit"; }

std::optional<PromptMode> parse_prompt_mode(std::string_view name) noexcept {
  if (name == "implicit") return PromptMode::Implicit;
  if (name == "explicit") return PromptMode::Explicit;
  return std::nullopt;
}

std::string_view display_name(DistortionKind kind) noexcept {
  switch (kind) {
    case DistortionKind::Blur: return "blur";
    case DistortionKind::Brightness: return "brightness";
    case DistortionKind::Color: return "color saturation";
    case DistortionKind::Contrast: return "contrast";
    case DistortionKind::Jpeg: return "JPEG compression";
    case DistortionKind::Noise: return "noise";
    case DistortionKind::Banding: return "banding";
    case DistortionKind::Mask: return "masking";
    case DistortionKind::WatermarkQr: return "QR code watermark";
    case DistortionKind::WatermarkText: return "text watermark";
    case DistortionKind::FovAngle: return "viewing angle";
    case DistortionKind::FovDistance: return "viewing distance";
    case DistortionKind::TextChar: return "character-level edits";
    case DistortionKind::TextWord: return "word-level edits";
    case DistortionKind::TextSentence: return "injected text";
  }
  return "distortion";
}

std::string render_prompt(const PromptConfig& config, DistortionKind kind) {
  if (config.mode == PromptMode::Implicit) return config.implicit_template;
  const std::string& t = config.explicit_template;
  const auto at = t.find(kDistortionPlaceholder);
  if (at == std::string::npos || t.find(kDistortionPlaceholder, at + 1) != std::string::npos)
    fail(ErrorCode::InvalidArgument, "explicit prompt template must contain {distortion} exactly once");
  std::string out = t;
  out.replace(at, kDistortionPlaceholder.size(), display_name(kind));
  return out;
}

Attachment attachment_for(const Content& content) {
  if (const auto* text = std::get_if<std::string>(&content)) return {"text/plain", Bytes(text->begin(), text->end())};
  return {"image/png", encode_png(std::get<Raster>(content))};
}

Attachment attachment_for(const Stimulus& stimulus) {
  if (stimulus.encoded.empty()) return attachment_for(stimulus.payload);
  if (is_jpeg(stimulus.encoded)) return {"image/jpeg", stimulus.encoded};
  if (is_png(stimulus.encoded)) return {"image/png", stimulus.encoded};
  return attachment_for(stimulus.payload);
}

int ComparisonQuery::anchor_total() const { return total(anchor_components, anchor_level); }
int ComparisonQuery::candidate_total() const { return total(candidate_components, candidate_level); }

std::string ComparisonQuery::key() const {
  char prompt_hash[17];
  std::snprintf(prompt_hash, sizeof prompt_hash, "%016llx", static_cast<unsigned long long>(fnv1a(prompt)));
  std::string k = reference_id;
  k += '|';
  k += to_string(kind);
  k += "|a=" + join(anchor_components, anchor_level);
  k += "|c=" + join(candidate_components, candidate_level);
  k += "|r=" + std::to_string(repeat);
  k += "|p=";
  k += prompt_hash;
  if (!tag.empty()) k += "|t=" + tag;
  return k;
}

std::string_view to_string(AnalysisStyle style) noexcept {
  switch (style) {
    case AnalysisStyle::Consistent: return "consistent";
    case AnalysisStyle::Antilogic: return "antilogic";
    case AnalysisStyle::Gibberish: return "gibberish";
    case AnalysisStyle::Empty: return "empty";
  }
  return "consistent";
}

std::optional<AnalysisStyle> parse_analysis_style(std::string_view name) noexcept {
  for (auto s : {AnalysisStyle::Consistent, AnalysisStyle::Antilogic, AnalysisStyle::Gibberish, AnalysisStyle::Empty})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::string render_reply(bool positive, AnalysisStyle style, DistortionKind kind) {
  const std::string flag = positive ? "<yes>" : "<no>";
  const std::string name(display_name(kind));
  switch (style) {
    case AnalysisStyle::Consistent:
      return positive ? flag + " The second image shows a noticeable difference in " + name + " compared with the first."
                      : flag + " The two images look the same, with no noticeable difference in " + name + ".";
    case AnalysisStyle::Antilogic:
      return positive ? "<yes> The two images look identical to me. <no>"
                      : "<no> The second image is clearly different from the first. <yes>";
    case AnalysisStyle::Gibberish:
      return flag + " ### @@@ !!! ### @@@ !!! ### @@@ !!!";
    case AnalysisStyle::Empty:
      return flag;
  }
  return flag;
}

void validate(const SimulatedPerceiverConfig& config) {
  if (!(config.threshold > 0.0)) fail(ErrorCode::InvalidArgument, "simulated threshold must be positive");
  if (!(config.lapse_rate >= 0.0 && config.lapse_rate < 1.0))
    fail(ErrorCode::InvalidArgument, "lapse rate must lie in [0, 1)");
}

SimulatedPerceiver::SimulatedPerceiver(SimulatedPerceiverConfig config) : config_(config) { validate(config_); }

std::string SimulatedPerceiver::describe() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "simulated(threshold=%g, lapse=%g, seed=%llu, style=%s%s)", config_.threshold,
                config_.lapse_rate, static_cast<unsigned long long>(config_.seed),
                std::string(to_string(config_.analysis_style)).c_str(), config_.additive ? ", additive" : "");
  return buf;
}

bool SimulatedPerceiver::decide(const ComparisonQuery& q) const {
  const double c = q.candidate_total();
  if (config_.additive || is_question(q)) return c >= config_.threshold;
  return std::abs(c - static_cast<double>(q.anchor_total())) >= config_.threshold;
}

Reply SimulatedPerceiver::do_compare(const ComparisonQuery& q) {
  bool positive = decide(q);
  if (config_.lapse_rate > 0.0) {
    Rng rng(derive_seed(config_.seed, {fnv1a(q.reference_id), static_cast<std::uint64_t>(q.kind),
                                       static_cast<std::uint64_t>(q.anchor_total()),
                                       static_cast<std::uint64_t>(q.candidate_total()),
                                       static_cast<std::uint64_t>(q.repeat), fnv1a(q.tag)}));
    if (rng.bernoulli(config_.lapse_rate)) positive = !positive;
  }
  if (is_question(q)) return {positive ? "I am not sure." : q.expected_answer, 0.0};
  return {render_reply(positive, config_.analysis_style, q.kind), 0.0};
}

ScriptedPerceiver::ScriptedPerceiver(Decision decision, AnalysisStyle style)
    : decision_(std::move(decision)), style_(style) {}

Reply ScriptedPerceiver::do_compare(const ComparisonQuery& q) { return {render_reply(decision_(q), style_, q.kind), 0.0}; }

void ReplayPerceiver::add(const std::string& key, Reply reply) {
  std::lock_guard lock(mutex_);
  replies_.insert_or_assign(key, std::move(reply));
}

std::size_t ReplayPerceiver::size() const {
  std::lock_guard lock(mutex_);
  return replies_.size();
}

Reply ReplayPerceiver::do_compare(const ComparisonQuery& q) {
  const std::string key = q.key();
  std::lock_guard lock(mutex_);
  const auto it = replies_.find(key);
  if (it == replies_.end()) fail(ErrorCode::CacheMiss, "no recorded reply for " + key);
  return it->second;
}

JournaledPerceiver::JournaledPerceiver(Perceiver& inner, Sink sink) : inner_(inner), sink_(std::move(sink)) {}

void JournaledPerceiver::preload(const std::string& key, Reply reply) {
  std::lock_guard lock(mutex_);
  cache_.insert_or_assign(key, std::move(reply));
}

Reply JournaledPerceiver::do_compare(const ComparisonQuery& q) {
  const std::string key = q.key();
  {
    std::lock_guard lock(mutex_);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  inner_calls_.fetch_add(1, std::memory_order_relaxed);
  Reply reply = inner_.compare(q);
  std::lock_guard lock(mutex_);
  if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (sink_) sink_(q, reply);
  cache_.emplace(key, reply);
  return reply;
}

}  // namespace jndkit
