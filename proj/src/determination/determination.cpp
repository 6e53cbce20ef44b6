#include "jndkit/determination.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "jndkit/errors.hpp"

namespace jndkit {

JndResult determine_jnd(int level_count, int window, const Judge& judge, const std::function<void(int)>& on_anchor) {
  if (level_count < 1) fail(ErrorCode::EmptyLadder, "ladder has no levels");
  if (window < 1) fail(ErrorCode::InvalidArgument, "window width must be at least 1");

  JndResult result;
  result.level_count = level_count;
  result.window = window;

  std::map<std::pair<int, int>, VerdictClass> memo;
  const auto positive = [&](int anchor, int candidate) {
    auto [it, fresh] = memo.try_emplace({anchor, candidate}, VerdictClass::Deficiency);
    if (fresh) {
      it->second = judge(anchor, candidate);
      result.verdict_log.push_back({anchor, candidate, it->second});
    }
    return it->second == VerdictClass::Positive;
  };

  int anchor = 0;
  for (;;) {
    int confirmed = -1;
    for (int c = anchor + 1; c <= level_count && confirmed < 0; ++c) {
      const int last = std::min(c + window - 1, level_count);
      bool ok = true;
      for (int j = c; j <= last && ok; ++j) ok = positive(anchor, j);
      if (ok) confirmed = c;
    }
    if (confirmed < 0) break;
    result.levels.push_back(confirmed);
    anchor = confirmed;
    if (on_anchor) on_anchor(anchor);
  }
  result.censored = anchor < level_count;
  return result;
}

VerdictClass vote(std::span<const VerdictClass> verdicts) {
  if (verdicts.empty()) fail(ErrorCode::EmptyInput, "no verdicts to vote on");
  std::array<std::size_t, 5> counts{};
  for (auto v : verdicts) ++counts[static_cast<std::size_t>(v)];
  const std::size_t n = verdicts.size();
  if (2 * counts[static_cast<std::size_t>(VerdictClass::Positive)] > n) return VerdictClass::Positive;
  if (2 * counts[static_cast<std::size_t>(VerdictClass::Negative)] > n) return VerdictClass::Negative;
  VerdictClass best = VerdictClass::Antilogy;
  for (auto v : {VerdictClass::Gibberish, VerdictClass::Deficiency})
    if (counts[static_cast<std::size_t>(v)] > counts[static_cast<std::size_t>(best)]) best = v;
  if (counts[static_cast<std::size_t>(best)] > 0) return best;
  // Only valid verdicts without a majority (even counts).
  return VerdictClass::Antilogy;
}

PerceiverJudge::PerceiverJudge(Perceiver& perceiver, GroundTruthTerm term, ContradictionChecker* checker, int repeats,
                               QueryFactory factory, std::function<void(const ComparisonOutcome&)> observer)
    : perceiver_(perceiver),
      term_(std::move(term)),
      checker_(checker),
      repeats_(repeats),
      factory_(std::move(factory)),
      observer_(std::move(observer)) {
  if (repeats_ < 1 || repeats_ % 2 == 0) fail(ErrorCode::InvalidArgument, "repeats must be a positive odd number");
  validate(term_);
}

VerdictClass PerceiverJudge::operator()(int anchor, int candidate) {
  std::vector<VerdictClass> verdicts;
  verdicts.reserve(static_cast<std::size_t>(repeats_));
  for (int r = 0; r < repeats_; ++r) {
    const ComparisonQuery query = factory_(anchor, candidate, r);
    const Reply reply = perceiver_.compare(query);
    const Verdict verdict = classify(split_response(reply.text, term_, reply.latency_ms), term_, checker_);
    if (observer_) observer_({query, reply, verdict});
    verdicts.push_back(verdict.verdict);
  }
  return vote(verdicts);
}

std::optional<int> response_variation_label(VerdictClass verdict, bool golden_positive) {
  if (!is_valid(verdict)) return std::nullopt;
  return (verdict == VerdictClass::Positive) == golden_positive ? 1 : 0;
}

std::optional<int> response_variation_label(Perceiver& perceiver, const ComparisonQuery& query,
                                            const GroundTruthTerm& term, ContradictionChecker* checker,
                                            bool golden_positive) {
  const Reply reply = perceiver.compare(query);
  return response_variation_label(classify(split_response(reply.text, term), term, checker).verdict,
                                  golden_positive);
}

MrvSummary mrv(std::span<const JndResult> results, int order) {
  if (results.empty()) fail(ErrorCode::EmptyInput, "no JND results");
  if (order < 1) fail(ErrorCode::InvalidArgument, "JND order must be at least 1");
  MrvSummary s;
  s.kind = results.front().kind;
  s.order = order;
  double sum = 0.0;
  for (const auto& r : results) {
    if (r.kind != s.kind) fail(ErrorCode::InvalidArgument, "results mix distortion kinds");
    if (static_cast<int>(r.levels.size()) >= order) {
      sum += r.levels[static_cast<std::size_t>(order - 1)];
    } else {
      sum += r.level_count + 1;
      ++s.censored_count;
    }
  }
  s.samples = static_cast<int>(results.size());
  s.value = sum / s.samples;
  s.lower_bound = s.censored_count > 0;
  return s;
}

std::vector<int> jnd_curve(const JndResult& result) {
  std::vector<int> curve(static_cast<std::size_t>(std::max(result.level_count, 0)), 0);
  for (int level : result.levels)
    if (level >= 1 && level <= result.level_count) curve[static_cast<std::size_t>(level - 1)] = 1;
  return curve;
}

}  // namespace jndkit
