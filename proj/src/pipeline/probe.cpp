#include <algorithm>
#include <set>

#include "jndkit/errors.hpp"
#include "jndkit/pipeline.hpp"
#include "jndkit/records.hpp"
#include "jndkit/remote.hpp"
#include "jndkit/store.hpp"

namespace jndkit {

using nlohmann::json;

namespace {

ComparisonQuery base_query(const std::string& reference, DistortionKind kind, int anchor, int candidate, int repeat,
                           const std::string& prompt) {
  ComparisonQuery q;
  q.reference_id = reference;
  q.kind = kind;
  q.anchor_level = anchor;
  q.candidate_level = candidate;
  q.repeat = repeat;
  q.prompt = prompt;
  return q;
}

std::string_view to_string(CheckerType type) {
  switch (type) {
    case CheckerType::Stub: return "stub";
    case CheckerType::Heuristic: return "heuristic";
    case CheckerType::Http: return "http";
  }
  return "stub";
}

std::string_view to_string(PerceiverType type) {
  switch (type) {
    case PerceiverType::Simulated: return "simulated";
    case PerceiverType::Remote: return "remote";
    case PerceiverType::Replay: return "replay";
  }
  return "simulated";
}

json comparison_body(const std::string& run, const ComparisonOutcome& o) {
  json body{{"run", run},
            {"reference", o.query.reference_id},
            {"kind", jndkit::to_string(o.query.kind)},
            {"anchor", o.query.anchor_level},
            {"candidate", o.query.candidate_level},
            {"repeat", o.query.repeat},
            {"key", o.query.key()},
            {"text", o.reply.text},
            {"latency_ms", o.reply.latency_ms},
            {"verdict", jndkit::to_string(o.verdict.verdict)}};
  if (o.verdict.checker_scores) {
    const NliScores& s = *o.verdict.checker_scores;
    body["nli"] = {{"e", s.entailment}, {"n", s.neutral}, {"c", s.contradiction}};
  }
  return body;
}

/// Recorded checker scores are keyed by what classify() fed the checker.
void add_recorded_scores(RecordedChecker& recorded, const json& comparison, const GroundTruthTerm& term) {
  if (!comparison.contains("nli")) return;
  const std::string text = comparison.at("text").get<std::string>();
  const PerceiverResponse response = split_response(text, term);
  const FlagResult flag = extract_flag(text, term);
  if (flag != FlagResult::PositiveFlag && flag != FlagResult::NegativeFlag) return;
  const json& s = comparison.at("nli");
  recorded.add(response.analysis, resolve_ground_truth(flag, term),
               {s.at("e").get<double>(), s.at("n").get<double>(), s.at("c").get<double>()});
}

Reply reply_of(const json& comparison) {
  return {comparison.at("text").get<std::string>(), comparison.value("latency_ms", 0.0)};
}

}  // namespace

json to_json(const PromptConfig& p) {
  return {{"mode", jndkit::to_string(p.mode)},
          {"implicit_template", p.implicit_template},
          {"explicit_template", p.explicit_template}};
}

PromptConfig prompt_config_from_json(const json& body) {
  PromptConfig p;
  const auto mode = parse_prompt_mode(body.at("mode").get<std::string>());
  if (!mode) fail(ErrorCode::MalformedJournal, "unknown prompt mode");
  p.mode = *mode;
  p.implicit_template = body.at("implicit_template").get<std::string>();
  p.explicit_template = body.at("explicit_template").get<std::string>();
  return p;
}

json to_json(const GroundTruthTerm& t) {
  return {{"positive", t.positive_flag},
          {"negative", t.negative_flag},
          {"positive_answer", t.positive_answer},
          {"negative_answer", t.negative_answer}};
}

GroundTruthTerm term_from_json(const json& body) {
  GroundTruthTerm t;
  t.positive_flag = body.at("positive").get<std::string>();
  t.negative_flag = body.at("negative").get<std::string>();
  t.positive_answer = body.at("positive_answer").get<std::string>();
  t.negative_answer = body.at("negative_answer").get<std::string>();
  return t;
}

std::unique_ptr<Perceiver> make_perceiver(const PerceiverEntry& entry) {
  switch (entry.type) {
    case PerceiverType::Simulated: return std::make_unique<SimulatedPerceiver>(entry.simulated);
    case PerceiverType::Remote: return std::make_unique<RemoteChatPerceiver>(entry.endpoint);
    case PerceiverType::Replay: {
      auto replay = std::make_unique<ReplayPerceiver>();
      for (const auto& r : records_of(read_journal(entry.journal).records, "comparison", ""))
        replay->add(r.at("key").get<std::string>(), reply_of(r));
      return replay;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown perceiver type");
}

std::unique_ptr<ContradictionChecker> make_checker(const CheckerEntry& entry) {
  switch (entry.type) {
    case CheckerType::Stub: return std::make_unique<StubChecker>();
    case CheckerType::Heuristic: return std::make_unique<HeuristicChecker>();
    case CheckerType::Http: return std::make_unique<HttpNliChecker>(entry.endpoint);
  }
  fail(ErrorCode::InvalidArgument, "unknown checker type");
}

RunEntry effective_run(const Manifest& manifest, const ProbeOptions& options) {
  RunEntry run = manifest.run;
  if (options.window) run.window = *options.window;
  if (options.repeats) run.repeats = *options.repeats;
  if (options.prompt_mode) run.prompt.mode = *options.prompt_mode;
  if (run.window < 1) fail(ErrorCode::InvalidArgument, "window must be at least 1");
  if (run.repeats < 1 || run.repeats % 2 == 0) fail(ErrorCode::InvalidArgument, "repeats must be a positive odd number");
  return run;
}

std::string run_id(const Manifest& manifest, const ProbeOptions& options) {
  const RunEntry run = effective_run(manifest, options);
  json kinds = json::array();
  for (auto k : options.kinds) kinds.push_back(to_string(k));
  const json identity{{"config", manifest.config_hash()}, {"perceiver", options.perceiver},
                      {"window", run.window},              {"repeats", run.repeats},
                      {"prompt", to_json(run.prompt)},     {"kinds", kinds}};
  return sha256_hex(identity.dump()).substr(0, 16);
}

ProbeSummary probe(const Manifest& manifest, const ProbeOptions& options, Journal& journal, Perceiver& perceiver,
                   ContradictionChecker* checker) {
  const RunEntry run = effective_run(manifest, options);
  StimulusSource source(manifest);
  ProbeSummary summary;
  summary.run_id = run_id(manifest, options);
  const std::string& id = summary.run_id;
  const auto& existing = journal.existing();

  json seeds{{"manifest", manifest.seed}};
  if (manifest.perceivers.count(options.perceiver)) {
    const PerceiverEntry& entry = manifest.perceiver(options.perceiver);
    if (entry.type == PerceiverType::Simulated) seeds["perceiver"] = entry.simulated.seed;
  }
  json ladders = json::object();
  for (const auto& l : manifest.ladders) ladders[std::string(to_string(l.spec.kind))] = l.spec.seed;
  seeds["ladders"] = ladders;
  json provenance{{"run", id},
                  {"command", "probe"},
                  {"version", kToolkitVersion},
                  {"config_hash", manifest.config_hash()},
                  {"seeds", seeds},
                  {"perceiver", options.perceiver},
                  {"perceiver_type", manifest.perceivers.count(options.perceiver)
                                         ? to_string(manifest.perceiver(options.perceiver).type)
                                         : "external"},
                  {"perceiver_description", perceiver.describe()},
                  {"window", run.window},
                  {"repeats", run.repeats},
                  {"sweep", options.sweep},
                  {"prompt", to_json(run.prompt)},
                  {"term", to_json(run.term)},
                  {"deterministic", manifest.deterministic},
                  {"resumed_records", existing.size()}};
  if (checker != nullptr) provenance["checker"] = to_string(manifest.checker.type);
  journal.append("provenance", provenance);

  // Everything already journaled for this run is served from the journal.
  JournaledPerceiver cached(perceiver, {});
  RecordedChecker recorded(checker);
  std::set<std::string> journaled_keys;
  for (const auto& c : records_of(existing, "comparison", id)) {
    const std::string key = c.at("key").get<std::string>();
    journaled_keys.insert(key);
    cached.preload(key, reply_of(c));
    add_recorded_scores(recorded, c, run.term);
  }
  std::set<std::pair<std::string, std::string>> done;
  for (const auto& body : records_of(existing, "jnd_result", id)) {
    JndResult r = jnd_result_from_json(body);
    done.insert({r.reference_id, std::string(to_string(r.kind))});
    summary.results.push_back(std::move(r));
    ++summary.resumed_results;
  }
  auto anchors = resume_points(existing, id);

  for (const auto& ladder : source.ladders()) {
    if (!options.kinds.empty() &&
        std::find(options.kinds.begin(), options.kinds.end(), ladder.kind) == options.kinds.end())
      continue;
    if (done.count({ladder.reference, std::string(to_string(ladder.kind))})) continue;

    const std::string prompt = render_prompt(run.prompt, ladder.kind);
    PerceiverJudge judge(
        cached, run.term, checker != nullptr ? &recorded : nullptr, run.repeats,
        [&](int a, int c, int r) {
          ComparisonQuery q = base_query(ladder.reference, ladder.kind, a, c, r, prompt);
          const auto payload = [&source, &ladder](int level) {
            return [&source, &ladder, level] {
              if (level == 0) return attachment_for(source.reference(ladder.reference).content);
              return attachment_for(source.stimulus(ladder.reference, ladder.kind, level));
            };
          };
          q.anchor_payload = payload(a);
          q.candidate_payload = payload(c);
          return q;
        },
        [&](const ComparisonOutcome& o) {
          if (journaled_keys.insert(o.query.key()).second) journal.append("comparison", comparison_body(id, o));
        });

    int& resumed_anchor = anchors[{ladder.reference, ladder.kind}];
    JndResult result = determine_jnd(ladder.level_count, run.window, std::ref(judge), [&](int anchor) {
      if (anchor <= resumed_anchor) return;
      journal.append("anchor", {{"run", id},
                                {"reference", ladder.reference},
                                {"kind", to_string(ladder.kind)},
                                {"anchor", anchor}});
      resumed_anchor = anchor;
    });
    result.reference_id = ladder.reference;
    result.kind = ladder.kind;
    if (options.sweep)
      for (int w = 1; w <= 5; ++w)
        if (w != run.window) determine_jnd(ladder.level_count, w, std::ref(judge));

    json body = to_json(result);
    body["run"] = id;
    journal.append("jnd_result", std::move(body));
    summary.results.push_back(std::move(result));
  }
  summary.perceiver_calls = cached.inner_calls();
  summary.cached_calls = cached.calls() - cached.inner_calls();
  return summary;
}

std::vector<JndResult> journaled_results(const std::vector<json>& records, const std::string& run_id) {
  std::vector<JndResult> out;
  for (const auto& body : records_of(records, "jnd_result", run_id)) out.push_back(jnd_result_from_json(body));
  return out;
}

ReplaySummary replay(const std::vector<json>& records) {
  ReplaySummary summary;
  const auto runs = run_ids(records);
  for (const auto& id : runs) {
    const auto provenance = records_of(records, "provenance", id);
    const json& p = provenance.front();
    if (p.value("command", "") != "probe") continue;
    const int repeats = p.at("repeats").get<int>();
    const PromptConfig prompt = prompt_config_from_json(p.at("prompt"));
    const GroundTruthTerm term = term_from_json(p.at("term"));

    ReplayPerceiver perceiver;
    RecordedChecker recorded;
    for (const auto& c : records_of(records, "comparison", id)) {
      perceiver.add(c.at("key").get<std::string>(), reply_of(c));
      add_recorded_scores(recorded, c, term);
    }
    ContradictionChecker* checker = p.contains("checker") ? &recorded : nullptr;

    for (const auto& body : records_of(records, "jnd_result", id)) {
      ReplayedResult out;
      out.run_id = id;
      out.journaled = jnd_result_from_json(body);
      const JndResult& j = out.journaled;
      const std::string text = render_prompt(prompt, j.kind);
      PerceiverJudge judge(perceiver, term, checker, repeats, [&](int a, int c, int r) {
        return base_query(j.reference_id, j.kind, a, c, r, text);
      });
      out.regenerated = determine_jnd(j.level_count, j.window, std::ref(judge));
      out.regenerated.reference_id = j.reference_id;
      out.regenerated.kind = j.kind;
      out.identical = to_json(out.regenerated).dump() == to_json(j).dump();
      summary.mismatches += !out.identical;
      summary.results.push_back(std::move(out));
    }
    summary.lookups += perceiver.calls();
  }
  return summary;
}

}  // namespace jndkit
