#include "jndkit/validator.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <vector>

#include "jndkit/errors.hpp"

namespace jndkit {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  const auto is_sep = [](char c) { return is_space(c) || c == ',' || c == ';' || c == ':' || c == '.' || c == '-'; };
  while (!s.empty() && is_sep(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

/// First position of needle in hay (both lowercase) not glued to neighbouring
/// letters or digits.
std::size_t find_standalone(std::string_view hay, std::string_view needle, std::size_t from = 0) {
  if (needle.empty()) return std::string_view::npos;
  for (auto pos = hay.find(needle, from); pos != std::string_view::npos; pos = hay.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || !is_alnum(needle.front()) || !is_alnum(hay[pos - 1]);
    const std::size_t end = pos + needle.size();
    const bool right_ok = end == hay.size() || !is_alnum(needle.back()) || !is_alnum(hay[end]);
    if (left_ok && right_ok) return pos;
  }
  return std::string_view::npos;
}

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool bracketed = false;
};

std::size_t find_bracketed(std::string_view lowered, const std::string& flag) {
  return lowered.find("<" + lower(flag) + ">");
}

/// Region holding the flag: bracketed tokens when present, else the first
/// clause.
Span flag_region(std::string_view raw, const GroundTruthTerm& term) {
  const std::string lowered = lower(raw);
  const auto pos = find_bracketed(lowered, term.positive_flag);
  const auto neg = find_bracketed(lowered, term.negative_flag);
  if (pos != std::string::npos || neg != std::string::npos) {
    const bool positive_first = neg == std::string::npos || (pos != std::string::npos && pos < neg);
    const std::size_t begin = positive_first ? pos : neg;
    const std::size_t len = (positive_first ? term.positive_flag : term.negative_flag).size() + 2;
    return {begin, begin + len, true};
  }
  std::size_t i = 0;
  for (; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == ',' || c == ';' || c == ':' || c == '\n') break;
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      if (j < raw.size() && is_space(raw[j])) {
        while (j < raw.size() && is_space(raw[j])) ++j;
        if (j < raw.size() && is_upper(raw[j])) break;
      }
    }
  }
  return {0, i, false};
}

const std::vector<std::regex>& sameness_patterns() {
  static const std::vector<std::regex> patterns = [] {
    const auto flags = std::regex::ECMAScript | std::regex::icase | std::regex::optimize;
    std::vector<std::regex> p;
    p.emplace_back(R"(\b(no|zero|without|any) (\w+ ){0,2}(differences?|changes?|variations?|distinctions?)\b)", flags);
    p.emplace_back(R"(\b(not|n't|never|hardly|barely) (\w+ ){0,2}(differ|differs|different|distinguishable|noticeable|visible|discernible|apparent|changed|altered)\b)", flags);
    p.emplace_back(R"(\b(cannot|can't|cannot really|unable to) (see|tell|detect|notice|spot|find|perceive)\b)", flags);
    p.emplace_back(R"(\b(identical|indistinguishable|unchanged|unaltered|equivalent)\b)", flags);
    p.emplace_back(R"(\bthe same\b)", flags);
    p.emplace_back(R"(\b(look|looks|appear|appears|seem|seems) alike\b)", flags);
    p.emplace_back(R"(\bnothing (has )?(changed|differs)\b)", flags);
    return p;
  }();
  return patterns;
}

const std::regex& difference_pattern() {
  static const std::regex pattern(
      R"(\b(differ|differs|differed|different|difference|differences|distinct|changed|altered|brighter|darker|blurrier|blurry|sharper|noisier|grainier|lighter|dimmer|more|less|higher|lower|reduced|increased|stronger|weaker|saturated|desaturated|washed|faded|vivid|degraded|distorted|noticeable|noticeably|visible|obvious|obviously)\b)",
      std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
  return pattern;
}

}  // namespace

void validate(const GroundTruthTerm& term) {
  if (term.positive_flag.empty() || term.negative_flag.empty()) fail(ErrorCode::InvalidArgument, "empty flag");
  if (lower(term.positive_flag) == lower(term.negative_flag))
    fail(ErrorCode::InvalidArgument, "positive and negative flags coincide");
}

std::string_view to_string(FlagResult flag) noexcept {
  switch (flag) {
    case FlagResult::PositiveFlag: return "positive_flag";
    case FlagResult::NegativeFlag: return "negative_flag";
    case FlagResult::NoFlag: return "no_flag";
    case FlagResult::BothFlags: return "both_flags";
  }
  return "no_flag";
}

std::string_view to_string(VerdictClass verdict) noexcept {
  switch (verdict) {
    case VerdictClass::Positive: return "positive";
    case VerdictClass::Negative: return "negative";
    case VerdictClass::Antilogy: return "antilogy";
    case VerdictClass::Gibberish: return "gibberish";
    case VerdictClass::Deficiency: return "deficiency";
  }
  return "deficiency";
}

std::optional<VerdictClass> parse_verdict_class(std::string_view name) noexcept {
  for (auto v : {VerdictClass::Positive, VerdictClass::Negative, VerdictClass::Antilogy, VerdictClass::Gibberish,
                 VerdictClass::Deficiency})
    if (to_string(v) == name) return v;
  return std::nullopt;
}

FlagResult extract_flag(std::string_view raw_text, const GroundTruthTerm& term) {
  const Span span = flag_region(raw_text, term);
  const std::string region = lower(raw_text.substr(0, std::max(span.end, span.begin)));
  bool pos = false, neg = false;
  if (span.bracketed) {
    const std::string all = lower(raw_text);
    pos = find_bracketed(all, term.positive_flag) != std::string::npos;
    neg = find_bracketed(all, term.negative_flag) != std::string::npos;
  } else {
    pos = find_standalone(region, lower(term.positive_flag)) != std::string::npos;
    neg = find_standalone(region, lower(term.negative_flag)) != std::string::npos;
  }
  if (pos && neg) return FlagResult::BothFlags;
  if (pos) return FlagResult::PositiveFlag;
  if (neg) return FlagResult::NegativeFlag;
  return FlagResult::NoFlag;
}

PerceiverResponse split_response(std::string raw_text, const GroundTruthTerm& term, double latency_ms) {
  PerceiverResponse r;
  r.latency_ms = latency_ms;
  r.word_count = count_words(raw_text);
  const Span span = flag_region(raw_text, term);
  const std::string_view raw(raw_text);
  r.flag_tokens = std::string(raw.substr(span.begin, span.end - span.begin));

  std::string_view analysis = trim(raw.substr(std::min(span.end, raw.size())));
  if (analysis.empty() && span.bracketed) analysis = trim(raw.substr(0, span.begin));
  if (analysis.empty() && !span.bracketed) {
    // Single-clause reply: the analysis follows the first flag token.
    const std::string region = lower(raw.substr(0, span.end));
    std::size_t cut = std::string::npos;
    for (const auto& flag : {term.positive_flag, term.negative_flag}) {
      const auto at = find_standalone(region, lower(flag));
      if (at != std::string::npos && (cut == std::string::npos || at + flag.size() < cut)) cut = at + flag.size();
    }
    if (cut != std::string::npos) analysis = trim(raw.substr(cut, span.end - cut));
  }
  r.analysis = std::string(analysis);
  r.raw_text = std::move(raw_text);
  return r;
}

const std::string& resolve_ground_truth(FlagResult flag, const GroundTruthTerm& term) {
  if (flag == FlagResult::PositiveFlag) return term.positive_answer;
  if (flag == FlagResult::NegativeFlag) return term.negative_answer;
  fail(ErrorCode::Unresolvable, std::string("no ground truth for ") + std::string(to_string(flag)));
}

int difference_polarity(std::string_view text) {
  std::string work(text);
  int same = 0;
  for (const auto& re : sameness_patterns()) {
    std::string next;
    auto out = std::back_inserter(next);
    auto last = work.cbegin();
    for (std::sregex_iterator it(work.begin(), work.end(), re), end; it != end; ++it) {
      ++same;
      out = std::copy(last, (*it)[0].first, out);
      next.append(static_cast<std::size_t>(it->length()), ' ');
      last = (*it)[0].second;
    }
    std::copy(last, work.cend(), out);
    work = std::move(next);
  }
  const auto& re = difference_pattern();
  const auto diff = std::distance(std::sregex_iterator(work.begin(), work.end(), re), std::sregex_iterator());
  if (diff > same) return 1;
  if (same > diff) return -1;
  return 0;
}

void RecordedChecker::add(std::string_view premise, std::string_view hypothesis, NliScores scores) {
  std::lock_guard lock(mutex_);
  scores_.insert_or_assign({std::string(premise), std::string(hypothesis)}, scores);
}

NliScores RecordedChecker::infer(std::string_view premise, std::string_view hypothesis) {
  {
    std::lock_guard lock(mutex_);
    const auto it = scores_.find({std::string(premise), std::string(hypothesis)});
    if (it != scores_.end()) return it->second;
  }
  if (inner_ == nullptr) fail(ErrorCode::CacheMiss, "no recorded checker decision");
  const NliScores s = inner_->infer(premise, hypothesis);
  add(premise, hypothesis, s);
  return s;
}

NliScores HeuristicChecker::infer(std::string_view premise, std::string_view hypothesis) {
  const int p = difference_polarity(premise);
  const int h = difference_polarity(hypothesis);
  if (p == 0 || h == 0) return {0.2, 0.6, 0.2};
  if (p == h) return {0.8, 0.1, 0.1};
  return {0.1, 0.1, 0.8};
}

int count_words(std::string_view text) {
  int n = 0;
  bool in_word = false, has_alnum = false;
  for (char c : text) {
    if (is_space(c)) {
      n += in_word && has_alnum;
      in_word = has_alnum = false;
    } else {
      in_word = true;
      has_alnum = has_alnum || is_alnum(c);
    }
  }
  return n + (in_word && has_alnum);
}

GibberishStats gibberish_stats(std::string_view analysis) {
  GibberishStats s;
  std::size_t visible = 0, symbols = 0;
  std::vector<std::string> words;
  std::string current;
  for (char c : analysis) {
    if (is_space(c)) {
      if (!current.empty()) words.push_back(std::move(current)), current.clear();
      continue;
    }
    ++visible;
    symbols += !is_alnum(c);
    current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (!current.empty()) words.push_back(std::move(current));
  if (visible > 0) s.non_alnum_ratio = static_cast<double>(symbols) / static_cast<double>(visible);
  if (!words.empty()) s.mean_word_length = static_cast<double>(visible) / static_cast<double>(words.size());
  if (words.size() >= 3) {
    std::map<std::string, std::size_t> counts;
    std::size_t best = 0;
    for (std::size_t i = 0; i + 3 <= words.size(); ++i)
      best = std::max(best, ++counts[words[i] + ' ' + words[i + 1] + ' ' + words[i + 2]]);
    s.trigram_count = words.size() - 2;
    s.max_trigram_share = static_cast<double>(best) / static_cast<double>(s.trigram_count);
  }
  return s;
}

bool looks_like_gibberish(std::string_view analysis) {
  const auto s = gibberish_stats(analysis);
  return s.non_alnum_ratio > 0.5 || (s.trigram_count >= 4 && s.max_trigram_share > 0.3) || s.mean_word_length > 15.0;
}

Verdict classify(const PerceiverResponse& response, const GroundTruthTerm& term, ContradictionChecker* checker) {
  Verdict v;
  v.flag = extract_flag(response.raw_text, term);
  const auto set = [&v](VerdictClass c) {
    v.verdict = c;
    return v;
  };
  if (v.flag == FlagResult::NoFlag || trim(response.analysis).empty()) return set(VerdictClass::Deficiency);
  if (looks_like_gibberish(response.analysis)) return set(VerdictClass::Gibberish);
  if (count_words(response.analysis) < 3) return set(VerdictClass::Deficiency);
  if (v.flag == FlagResult::BothFlags) return set(VerdictClass::Antilogy);
  if (checker != nullptr) {
    const std::string& truth = resolve_ground_truth(v.flag, term);
    NliScores scores;
    try {
      scores = checker->infer(response.analysis, truth);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CheckerUnavailable) throw;
      HeuristicChecker fallback;
      scores = fallback.infer(response.analysis, truth);
      v.checker_fallback = true;
    }
    v.checker_confidence = scores.contradiction;
    v.checker_scores = scores;
    if (scores.contradiction > 0.5) return set(VerdictClass::Antilogy);
  }
  return set(v.flag == FlagResult::PositiveFlag ? VerdictClass::Positive : VerdictClass::Negative);
}

}  // namespace jndkit
