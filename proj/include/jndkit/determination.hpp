#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jndkit/ladder.hpp"
#include "jndkit/perceiver.hpp"
#include "jndkit/validator.hpp"

namespace jndkit {

/// Voted verdict for one (anchor, candidate) pair.
using Judge = std::function<VerdictClass(int anchor, int candidate)>;

struct VerdictLogEntry {
  int anchor = 0;
  int candidate = 0;
  VerdictClass verdict = VerdictClass::Deficiency;

  friend bool operator==(const VerdictLogEntry&, const VerdictLogEntry&) = default;
};

struct JndResult {
  std::string reference_id;
  DistortionKind kind = DistortionKind::Blur;
  int level_count = 0;
  int window = 3;
  std::vector<int> levels;  ///< confirmed JND points, strictly increasing
  bool censored = true;     ///< the last anchor produced no further JND
  /// Each distinct pair once, in the order first consulted.
  std::vector<VerdictLogEntry> verdict_log;

  int final_anchor() const { return levels.empty() ? 0 : levels.back(); }
  friend bool operator==(const JndResult&, const JndResult&) = default;
};

/// Anchored scan with a sliding-window regularizer. The anchor starts at the
/// reference (level 0); candidate c is confirmed when c and the next w-1
/// candidates are all Positive against the same anchor (near the ladder end,
/// all remaining candidates). The anchor then jumps to c. Any other verdict
/// counts as Negative. Only anchor-relative pairs are consulted, each once.
/// on_anchor runs after each confirmation.
JndResult determine_jnd(int level_count, int window, const Judge& judge,
                        const std::function<void(int anchor)>& on_anchor = {});

/// Majority of valid verdicts when one polarity holds more than half the
/// votes; otherwise the most frequent hallucination class, ties resolved
/// Antilogy, then Gibberish, then Deficiency.
VerdictClass vote(std::span<const VerdictClass> verdicts);

struct ComparisonOutcome {
  const ComparisonQuery& query;
  const Reply& reply;
  const Verdict& verdict;
};

/// Builds a query for (anchor, candidate, repeat).
using QueryFactory = std::function<ComparisonQuery(int anchor, int candidate, int repeat)>;

/// Asks the perceiver `repeats` times (odd), validates every reply and
/// votes. The observer sees each classified reply before the vote.
class PerceiverJudge {
 public:
  PerceiverJudge(Perceiver& perceiver, GroundTruthTerm term, ContradictionChecker* checker, int repeats,
                 QueryFactory factory, std::function<void(const ComparisonOutcome&)> observer = {});
  VerdictClass operator()(int anchor, int candidate);

 private:
  Perceiver& perceiver_;
  GroundTruthTerm term_;
  ContradictionChecker* checker_;
  int repeats_;
  QueryFactory factory_;
  std::function<void(const ComparisonOutcome&)> observer_;
};

/// 1 when the valid verdict matches the golden polarity, 0 when it does not,
/// nullopt for hallucinations (excluded from averages).
std::optional<int> response_variation_label(VerdictClass verdict, bool golden_positive);
std::optional<int> response_variation_label(Perceiver& perceiver, const ComparisonQuery& query,
                                            const GroundTruthTerm& term, ContradictionChecker* checker,
                                            bool golden_positive);

struct MrvSummary {
  DistortionKind kind = DistortionKind::Blur;
  int order = 1;
  double value = 0.0;
  int samples = 0;
  int censored_count = 0;
  /// Censored references contributed level_count + 1.
  bool lower_bound = false;
};

/// Mean n-th JND level over references. References without an n-th JND
/// count as level_count + 1. Throws EmptyInput for no results and
/// InvalidArgument for order < 1 or mixed kinds.
MrvSummary mrv(std::span<const JndResult> results, int order);

/// 1 at each JND level, 0 elsewhere; index i is level i + 1.
std::vector<int> jnd_curve(const JndResult& result);

}  // namespace jndkit
