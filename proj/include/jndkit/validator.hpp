#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace jndkit {

/// Flags and canonical answers used to validate a yes/no comparison reply.
struct GroundTruthTerm {
  std::string positive_flag = "yes";
  std::string negative_flag = "no";
  std::string positive_answer = "There is a noticeable difference between the two images.";
  std::string negative_answer = "The two images look the same, with no noticeable difference.";
  std::string question = "Is there any noticeable difference between the two images?";
};

/// Throws InvalidArgument when a flag is empty or both flags are equal.
void validate(const GroundTruthTerm& term);

enum class FlagResult { PositiveFlag, NegativeFlag, NoFlag, BothFlags };

enum class VerdictClass { Positive, Negative, Antilogy, Gibberish, Deficiency };

std::string_view to_string(FlagResult flag) noexcept;
std::string_view to_string(VerdictClass verdict) noexcept;
std::optional<VerdictClass> parse_verdict_class(std::string_view name) noexcept;

inline bool is_valid(VerdictClass v) noexcept { return v == VerdictClass::Positive || v == VerdictClass::Negative; }

/// A reply split into its flag region and analysis. Both flag_tokens and
/// analysis are substrings of raw_text.
struct PerceiverResponse {
  std::string raw_text;
  std::string flag_tokens;
  std::string analysis;
  int word_count = 0;
  double latency_ms = 0.0;
};

/// Splits raw text. When bracketed flags such as "<yes>" occur, the first
/// bracketed flag is the flag region; otherwise the first clause is. The
/// analysis is the text after the flag region (or after the first flag
/// token when the reply is a single clause).
PerceiverResponse split_response(std::string raw_text, const GroundTruthTerm& term, double latency_ms = 0.0);

/// Case-insensitive standalone-token search inside the flag region.
FlagResult extract_flag(std::string_view raw_text, const GroundTruthTerm& term);

/// G^P for a positive flag, G^N for a negative one; Unresolvable otherwise.
const std::string& resolve_ground_truth(FlagResult flag, const GroundTruthTerm& term);

struct NliScores {
  double entailment = 1.0;
  double neutral = 0.0;
  double contradiction = 0.0;
};

/// Natural language inference backend. Implementations throw
/// CheckerUnavailable when they cannot answer.
class ContradictionChecker {
 public:
  virtual ~ContradictionChecker() = default;
  virtual NliScores infer(std::string_view premise, std::string_view hypothesis) = 0;
};

/// Always reports entailment.
class StubChecker final : public ContradictionChecker {
 public:
  NliScores infer(std::string_view, std::string_view) override { return {}; }
};

/// Serves recorded scores keyed by (premise, hypothesis) and forwards misses
/// to the inner checker, or raises CacheMiss when there is none.
class RecordedChecker final : public ContradictionChecker {
 public:
  explicit RecordedChecker(ContradictionChecker* inner = nullptr) : inner_(inner) {}
  void add(std::string_view premise, std::string_view hypothesis, NliScores scores);
  NliScores infer(std::string_view premise, std::string_view hypothesis) override;

 private:
  ContradictionChecker* inner_;
  std::mutex mutex_;
  std::map<std::pair<std::string, std::string>, NliScores> scores_;
};

/// Polarity lexicon over "difference" and "sameness" phrases. Opposite
/// polarities give contradiction 0.8, equal ones entailment 0.8, anything
/// undetermined is neutral.
class HeuristicChecker final : public ContradictionChecker {
 public:
  NliScores infer(std::string_view premise, std::string_view hypothesis) override;
};

/// +1 when the text asserts a difference, -1 when it asserts sameness, 0 when
/// undetermined.
int difference_polarity(std::string_view text);

struct GibberishStats {
  double non_alnum_ratio = 0.0;     ///< over non-whitespace characters
  double max_trigram_share = 0.0;   ///< most frequent word 3-gram / all 3-grams
  double mean_word_length = 0.0;
  std::size_t trigram_count = 0;
};

GibberishStats gibberish_stats(std::string_view analysis);
bool looks_like_gibberish(std::string_view analysis);
/// Whitespace-separated tokens holding at least one letter or digit.
int count_words(std::string_view text);

struct Verdict {
  VerdictClass verdict = VerdictClass::Deficiency;
  FlagResult flag = FlagResult::NoFlag;
  std::optional<double> checker_confidence;  ///< contradiction probability, when a checker ran
  std::optional<NliScores> checker_scores;
  bool checker_fallback = false;             ///< the heuristic stood in for an unavailable checker
};

/// Rules, in order: no flag or empty analysis -> Deficiency; gibberish
/// heuristic -> Gibberish; fewer than 3 analysis words -> Deficiency; both
/// flags -> Antilogy; checker contradiction > 0.5 against the resolved ground
/// truth -> Antilogy; otherwise the flag's polarity. A null checker skips the
/// contradiction test.
Verdict classify(const PerceiverResponse& response, const GroundTruthTerm& term, ContradictionChecker* checker);

}  // namespace jndkit
