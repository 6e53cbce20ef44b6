#include <algorithm>
#include <map>

#include "jndkit/analysis.hpp"
#include "jndkit/errors.hpp"
#include "jndkit/records.hpp"

namespace jndkit {

using nlohmann::json;

namespace {

double pct(long part, long whole) { return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / whole; }

VerdictClass verdict_of(const json& record) {
  const auto v = parse_verdict_class(record.at("verdict").get<std::string>());
  if (!v) fail(ErrorCode::MalformedJournal, "unknown verdict in comparison record");
  return *v;
}

}  // namespace

IncidenceReport error_incidence(std::span<const json> comparisons) {
  IncidenceReport rep;
  long words = 0;
  for (const auto& c : comparisons) {
    ++rep.counts[verdict_of(c)];
    words += count_words(c.at("text").get<std::string>());
    ++rep.comparisons;
  }
  const auto n = [&](VerdictClass v) { return rep.counts.count(v) ? rep.counts.at(v) : 0L; };
  rep.correct_pct = pct(n(VerdictClass::Positive) + n(VerdictClass::Negative), rep.comparisons);
  rep.antilogy_pct = pct(n(VerdictClass::Antilogy), rep.comparisons);
  rep.gibberish_pct = pct(n(VerdictClass::Gibberish), rep.comparisons);
  rep.deficiency_pct = pct(n(VerdictClass::Deficiency), rep.comparisons);
  if (rep.comparisons > 0) rep.mean_words = static_cast<double>(words) / static_cast<double>(rep.comparisons);
  return rep;
}

PartialJnd replay_width(const std::map<std::pair<int, int>, VerdictClass>& verdicts, int level_count, int window) {
  PartialJnd out;
  try {
    determine_jnd(
        level_count, window,
        [&](int a, int c) {
          const auto it = verdicts.find({a, c});
          if (it == verdicts.end()) fail(ErrorCode::CacheMiss, "pair not journaled");
          return it->second;
        },
        [&](int anchor) { out.levels.push_back(anchor); });
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CacheMiss) throw;
    out.complete = false;
  }
  return out;
}

std::string_view compare_partial(const PartialJnd& a, const PartialJnd& b) {
  const std::size_t common = std::min(a.levels.size(), b.levels.size());
  for (std::size_t i = 0; i < common; ++i)
    if (a.levels[i] != b.levels[i]) return "disagree";
  if (a.complete && b.complete) return a.levels.size() == b.levels.size() ? "agree" : "disagree";
  // A finished list that is shorter than the other's known prefix can never catch up.
  if (a.complete && a.levels.size() < b.levels.size()) return "disagree";
  if (b.complete && b.levels.size() < a.levels.size()) return "disagree";
  return "unresolved";
}

RunReport run_report(const std::vector<json>& records, const std::string& run_id) {
  const auto comparisons = records_of(records, "comparison", run_id);
  if (comparisons.empty()) fail(ErrorCode::EmptyJournal, "run " + run_id + " has no comparison records");
  RunReport rep;
  rep.run_id = run_id;
  rep.incidence = error_incidence(comparisons);

  int repeats = 1;
  for (const auto& p : records_of(records, "provenance", run_id)) repeats = p.value("repeats", repeats);

  // (reference, kind) -> (anchor, candidate) -> per-repeat verdicts
  std::map<std::pair<std::string, std::string>, std::map<std::pair<int, int>, std::vector<VerdictClass>>> votes;
  for (const auto& c : comparisons) {
    if (!c.contains("anchor")) continue;
    votes[{c.at("reference").get<std::string>(), c.at("kind").get<std::string>()}]
         [{c.at("anchor").get<int>(), c.at("candidate").get<int>()}]
             .push_back(verdict_of(c));
  }

  for (int w = 1; w <= 5; ++w) rep.sweep.push_back({.width = w});
  for (const auto& body : records_of(records, "jnd_result", run_id)) {
    const JndResult result = jnd_result_from_json(body);
    std::map<std::pair<int, int>, VerdictClass> table;
    for (const auto& [pair, vs] : votes[{result.reference_id, std::string(to_string(result.kind))}])
      if (static_cast<int>(vs.size()) >= repeats) table.emplace(pair, vote(std::span(vs).first(repeats)));
    const PartialJnd widest = replay_width(table, result.level_count, 5);
    for (auto& row : rep.sweep) {
      ++row.compared;
      const auto outcome = compare_partial(replay_width(table, result.level_count, row.width), widest);
      row.disagreements += outcome == "disagree";
      row.unresolved += outcome == "unresolved";
    }
  }
  for (auto& row : rep.sweep) row.disagreement_pct = pct(row.disagreements, row.compared - row.unresolved);
  return rep;
}

}  // namespace jndkit
