#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "jndkit/codec.hpp"
#include "jndkit/ladder.hpp"
#include "jndkit/stimulus.hpp"

namespace jndkit {

enum class PromptMode { Implicit, Explicit };

std::string_view to_string(PromptMode mode) noexcept;
std::optional<PromptMode> parse_prompt_mode(std::string_view name) noexcept;

/// Human-readable distortion name used in explicit prompts, e.g. "JPEG
/// compression" or "contrast".
std::string_view display_name(DistortionKind kind) noexcept;

inline constexpr std::string_view kDistortionPlaceholder = "{distortion}";

struct PromptConfig {
  PromptMode mode = PromptMode::Implicit;
  std::string implicit_template =
      "Is there any noticeable difference between the two images? Please answer <yes> or <no> with analysis.";
  std::string explicit_template =
      "Is there any noticeable difference in {distortion} between the two images? Please answer <yes> or <no> "
      "with analysis.";
};

/// Implicit mode returns the implicit template verbatim. Explicit mode
/// substitutes the display name; the template must hold the placeholder
/// exactly once (InvalidArgument otherwise).
std::string render_prompt(const PromptConfig& config, DistortionKind kind);

/// One encoded attachment. Text stimuli travel as "text/plain".
struct Attachment {
  std::string mime;
  Bytes data;
};

using PayloadFn = std::function<Attachment()>;

/// Encodes content as PNG, or as text/plain for strings.
Attachment attachment_for(const Content& content);
/// Uses the stored stream (JPEG, ingested files) when there is one.
Attachment attachment_for(const Stimulus& stimulus);

/// A two-stimulus comparison, anchor first. Payloads are produced lazily so
/// adapters that never look at pixels never encode them.
struct ComparisonQuery {
  std::string reference_id;
  DistortionKind kind = DistortionKind::Blur;
  int anchor_level = 0;
  int candidate_level = 1;
  /// Per-distortion levels of composite stimuli; empty means {level}.
  std::vector<int> anchor_components;
  std::vector<int> candidate_components;
  std::string prompt;
  int repeat = 0;
  /// Distinguishes analysis queries (e.g. "vqa:q17") from ladder scans.
  std::string tag;
  /// Expected answer for single-image question queries.
  std::string expected_answer;
  PayloadFn anchor_payload;  ///< empty for single-image questions
  PayloadFn candidate_payload;

  int anchor_total() const;
  int candidate_total() const;
  /// Stable identity over every field that can change the answer.
  std::string key() const;
};

struct Reply {
  std::string text;
  double latency_ms = 0.0;
};

/// Anything that answers comparison queries. compare() is thread-safe for
/// every adapter in this library.
class Perceiver {
 public:
  virtual ~Perceiver() = default;

  Reply compare(const ComparisonQuery& query) {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return do_compare(query);
  }

  /// Number of compare() calls served by this adapter.
  long calls() const noexcept { return calls_.load(std::memory_order_relaxed); }
  virtual std::string describe() const = 0;

 protected:
  virtual Reply do_compare(const ComparisonQuery& query) = 0;

 private:
  std::atomic<long> calls_{0};
};

enum class AnalysisStyle { Consistent, Antilogic, Gibberish, Empty };

std::string_view to_string(AnalysisStyle style) noexcept;
std::optional<AnalysisStyle> parse_analysis_style(std::string_view name) noexcept;

/// Canned reply text for a decided comparison in the given style.
std::string render_reply(bool positive, AnalysisStyle style, DistortionKind kind);

struct SimulatedPerceiverConfig {
  double threshold = 7.0;
  double lapse_rate = 0.0;
  std::uint64_t seed = 0;
  AnalysisStyle analysis_style = AnalysisStyle::Consistent;
  /// Judge the candidate's summed component levels alone instead of its
  /// distance from the anchor.
  bool additive = false;
};

/// Throws InvalidArgument unless threshold > 0 and lapse_rate in [0, 1).
void validate(const SimulatedPerceiverConfig& config);

/// Positive iff |candidate_total - anchor_total| >= threshold (or
/// candidate_total >= threshold when additive); each repeat flips the answer
/// with probability lapse_rate, seeded by the query identity. Question
/// queries answer expected_answer below threshold and a hedge otherwise.
class SimulatedPerceiver final : public Perceiver {
 public:
  explicit SimulatedPerceiver(SimulatedPerceiverConfig config);
  std::string describe() const override;
  const SimulatedPerceiverConfig& config() const noexcept { return config_; }
  /// The noiseless decision.
  bool decide(const ComparisonQuery& query) const;

 protected:
  Reply do_compare(const ComparisonQuery& query) override;

 private:
  SimulatedPerceiverConfig config_;
};

/// Answers from a caller-supplied decision table.
class ScriptedPerceiver final : public Perceiver {
 public:
  using Decision = std::function<bool(const ComparisonQuery&)>;
  explicit ScriptedPerceiver(Decision decision, AnalysisStyle style = AnalysisStyle::Consistent);
  std::string describe() const override { return "scripted"; }

 protected:
  Reply do_compare(const ComparisonQuery& query) override;

 private:
  Decision decision_;
  AnalysisStyle style_;
};

/// Serves recorded replies by query key; CacheMiss otherwise.
class ReplayPerceiver final : public Perceiver {
 public:
  ReplayPerceiver() = default;
  explicit ReplayPerceiver(std::map<std::string, Reply> replies) : replies_(std::move(replies)) {}
  void add(const std::string& key, Reply reply);
  std::size_t size() const;
  std::string describe() const override { return "replay"; }

 protected:
  Reply do_compare(const ComparisonQuery& query) override;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, Reply> replies_;
};

/// Caches replies by key and reports every fresh reply to the sink before
/// returning it. Preloaded replies are served without calling the inner
/// perceiver, which is how resumed runs avoid repeating work.
class JournaledPerceiver final : public Perceiver {
 public:
  using Sink = std::function<void(const ComparisonQuery&, const Reply&)>;
  JournaledPerceiver(Perceiver& inner, Sink sink);
  void preload(const std::string& key, Reply reply);
  /// Calls forwarded to the inner perceiver.
  long inner_calls() const noexcept { return inner_calls_.load(std::memory_order_relaxed); }
  std::string describe() const override { return inner_.describe(); }

 protected:
  Reply do_compare(const ComparisonQuery& query) override;

 private:
  Perceiver& inner_;
  Sink sink_;
  std::mutex mutex_;
  std::map<std::string, Reply> cache_;
  std::atomic<long> inner_calls_{0};
};

}  // namespace jndkit
