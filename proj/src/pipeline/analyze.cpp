#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "jndkit/analysis.hpp"
#include "jndkit/errors.hpp"
#include "jndkit/pipeline.hpp"
#include "jndkit/records.hpp"

namespace jndkit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> header) { row(std::vector<std::string>(header)); }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_field(cells[i]);
    out_ << "\n";
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

json provenance_of(const std::vector<json>& records, const std::string& run_id) {
  const auto p = records_of(records, "provenance", run_id);
  if (p.empty()) fail(ErrorCode::NotFound, "run " + run_id + " has no provenance record");
  return p.front();
}

std::map<DistortionKind, std::vector<JndResult>> by_kind(const std::vector<JndResult>& results) {
  std::map<DistortionKind, std::vector<JndResult>> out;
  for (const auto& r : results) out[r.kind].push_back(r);
  return out;
}

json to_json(const MrvSummary& s) {
  return {{"kind", to_string(s.kind)},    {"order", s.order},
          {"value", s.value},              {"samples", s.samples},
          {"censored", s.censored_count}, {"lower_bound", s.lower_bound}};
}

MrvSummary first_mrv(const std::vector<json>& records, const std::string& run_id, DistortionKind kind) {
  std::vector<JndResult> results;
  for (auto& r : journaled_results(records, run_id))
    if (r.kind == kind) results.push_back(std::move(r));
  if (results.empty())
    fail(ErrorCode::InsufficientData, "run " + run_id + " has no " + std::string(to_string(kind)) + " results");
  return mrv(results, 1);
}

}  // namespace

std::string select_run(const std::vector<json>& records, const std::string& requested) {
  std::vector<std::string> probes;
  for (const auto& id : run_ids(records))
    if (provenance_of(records, id).value("command", "") == "probe") probes.push_back(id);
  if (!requested.empty()) {
    if (std::find(probes.begin(), probes.end(), requested) == probes.end())
      fail(ErrorCode::NotFound, "no probe run " + requested + " in the journal");
    return requested;
  }
  if (probes.empty()) fail(ErrorCode::EmptyJournal, "the journal holds no probe run");
  if (probes.size() > 1) {
    std::string list;
    for (const auto& p : probes) list += " " + p;
    fail(ErrorCode::InvalidArgument, "several runs in the journal, pick one with --run:" + list);
  }
  return probes.front();
}

void write_output(const AnalysisOutput& output, const fs::path& out_dir, const std::string& name) {
  fs::create_directories(out_dir);
  write_text_file(out_dir / (name + ".json"), output.document.dump(2) + "\n");
  for (const auto& [file, text] : output.tables) write_text_file(out_dir / file, text);
}

AnalysisOutput analyze_mrv(const std::vector<json>& records, const std::string& run_id) {
  const auto results = journaled_results(records, run_id);
  if (results.empty()) fail(ErrorCode::EmptyJournal, "run " + run_id + " has no JND results");
  AnalysisOutput out;
  out.document = {{"run", run_id}, {"mrv", json::array()}, {"results", json::array()}};
  Csv table({"kind", "order", "mrv", "samples", "censored", "lower_bound"});
  Csv curves({"reference", "kind", "level", "flag"});
  for (const auto& [kind, group] : by_kind(results)) {
    std::size_t orders = 1;
    for (const auto& r : group) orders = std::max(orders, r.levels.size());
    for (std::size_t n = 1; n <= orders; ++n) {
      const MrvSummary s = mrv(group, static_cast<int>(n));
      out.document["mrv"].push_back(to_json(s));
      table.row({std::string(to_string(kind)), std::to_string(n), num(s.value), std::to_string(s.samples),
                 std::to_string(s.censored_count), s.lower_bound ? "true" : "false"});
    }
    for (const auto& r : group) {
      out.document["results"].push_back(to_json(r));
      const auto curve = jnd_curve(r);
      for (std::size_t i = 0; i < curve.size(); ++i)
        curves.row({r.reference_id, std::string(to_string(kind)), std::to_string(i + 1), std::to_string(curve[i])});
    }
  }
  out.tables["mrv.csv"] = table.str();
  out.tables["curves.csv"] = curves.str();
  return out;
}

AnalysisOutput analyze_report(const std::vector<json>& records, const std::string& run_id) {
  const RunReport rep = run_report(records, run_id);
  AnalysisOutput out;
  const IncidenceReport& inc = rep.incidence;
  out.document = {{"run", run_id},
                  {"comparisons", inc.comparisons},
                  {"correct_pct", inc.correct_pct},
                  {"antilogy_pct", inc.antilogy_pct},
                  {"gibberish_pct", inc.gibberish_pct},
                  {"deficiency_pct", inc.deficiency_pct},
                  {"mean_words", inc.mean_words},
                  {"width_sweep", json::array()}};
  Csv incidence({"class", "percent"});
  incidence.row({"correct", num(inc.correct_pct)});
  incidence.row({"antilogy", num(inc.antilogy_pct)});
  incidence.row({"gibberish", num(inc.gibberish_pct)});
  incidence.row({"deficiency", num(inc.deficiency_pct)});
  Csv sweep({"width", "compared", "disagreements", "unresolved", "disagreement_pct"});
  for (const auto& row : rep.sweep) {
    out.document["width_sweep"].push_back({{"width", row.width},
                                           {"compared", row.compared},
                                           {"disagreements", row.disagreements},
                                           {"unresolved", row.unresolved},
                                           {"disagreement_pct", row.disagreement_pct}});
    sweep.row({std::to_string(row.width), std::to_string(row.compared), std::to_string(row.disagreements),
               std::to_string(row.unresolved), num(row.disagreement_pct)});
  }
  out.tables["incidence.csv"] = incidence.str();
  out.tables["width_sweep.csv"] = sweep.str();
  return out;
}

AnalysisOutput analyze_correlate(const std::vector<std::vector<json>>& journals) {
  MrvMatrix m;
  std::set<DistortionKind> kinds;
  std::vector<std::map<DistortionKind, std::optional<double>>> rows;
  for (const auto& records : journals) {
    for (const auto& id : run_ids(records)) {
      const json p = provenance_of(records, id);
      if (p.value("command", "") != "probe") continue;
      const auto results = journaled_results(records, id);
      if (results.empty()) continue;
      m.models.push_back(p.value("perceiver", std::string("run")) + ":" + id);
      auto& row = rows.emplace_back();
      for (const auto& [kind, group] : by_kind(results)) {
        kinds.insert(kind);
        const MrvSummary s = mrv(group, 1);
        row[kind] = s.lower_bound ? std::nullopt : std::optional<double>(s.value);
      }
    }
  }
  m.kinds.assign(kinds.begin(), kinds.end());
  for (const auto& row : rows) {
    auto& values = m.values.emplace_back();
    for (auto k : m.kinds) values.push_back(row.count(k) ? row.at(k) : std::nullopt);
  }
  const CorrelationMatrix c = dimension_correlation(m);
  AnalysisOutput out;
  json kinds_json = json::array();
  for (auto k : c.kinds) kinds_json.push_back(to_string(k));
  out.document = {{"models", m.models}, {"kinds", kinds_json}, {"r", c.r}, {"samples", c.samples}};
  Csv table({"kind_a", "kind_b", "r", "samples"});
  for (std::size_t a = 0; a < c.kinds.size(); ++a)
    for (std::size_t b = 0; b < c.kinds.size(); ++b)
      table.row({std::string(to_string(c.kinds[a])), std::string(to_string(c.kinds[b])), num(c.r[a][b]),
                 std::to_string(c.samples[a][b])});
  out.tables["correlation.csv"] = table.str();
  return out;
}

AnalysisOutput analyze_homogeneity(const std::vector<json>& records, const std::string& run_id,
                                   const Manifest& manifest, Perceiver& perceiver, ContradictionChecker* checker,
                                   const HomogeneityRequest& request) {
  const json p = provenance_of(records, run_id);
  ContaminationPlan plan;
  const auto spec_for = [&](DistortionKind kind) {
    for (const auto& l : manifest.ladders)
      if (l.spec.kind == kind) return l.spec;
    return default_ladder(kind, manifest.seed);
  };
  plan.source = spec_for(request.source);
  plan.injected = spec_for(request.injected);
  plan.source_mrv = first_mrv(records, run_id, request.source).value;
  plan.injected_mrv = first_mrv(records, run_id, request.injected).value;
  plan.source_first = request.source_first;

  std::vector<JndResult> source_results;
  for (auto& r : journaled_results(records, run_id))
    if (r.kind == request.source) source_results.push_back(std::move(r));
  std::vector<std::string> ids;
  if (request.above_average) {
    ids = above_average_references(source_results);
  } else {
    for (const auto& r : source_results) ids.push_back(r.reference_id);
  }
  StimulusSource source(manifest);
  std::vector<Reference> refs;
  for (const auto& id : ids) refs.push_back(source.reference(id));

  JudgeSettings settings;
  settings.term = term_from_json(p.at("term"));
  settings.checker = checker;
  settings.repeats = p.at("repeats").get<int>();
  settings.prompt = prompt_config_from_json(p.at("prompt"));
  const HomogeneityTable table = homogeneity_test(plan, refs, perceiver, settings);

  AnalysisOutput out;
  out.document = {{"run", run_id},
                  {"source", to_string(request.source)},
                  {"injected", to_string(request.injected)},
                  {"source_first", request.source_first},
                  {"source_mrv", plan.source_mrv},
                  {"injected_mrv", plan.injected_mrv},
                  {"references", ids},
                  {"cells", json::array()}};
  Csv csv({"source_fraction", "injected_fraction", "source_level", "injected_level", "validated", "unchanged", "tau"});
  for (const auto& cell : table.cells) {
    out.document["cells"].push_back({{"source_fraction", cell.source_fraction},
                                     {"injected_fraction", cell.injected_fraction},
                                     {"source_level", cell.source_level},
                                     {"injected_level", cell.injected_level},
                                     {"validated", cell.validated},
                                     {"unchanged", cell.unchanged},
                                     {"tau", cell.tau ? json(*cell.tau) : json(nullptr)}});
    csv.row({num(cell.source_fraction), num(cell.injected_fraction), std::to_string(cell.source_level),
             std::to_string(cell.injected_level), std::to_string(cell.validated), std::to_string(cell.unchanged),
             cell.tau ? num(*cell.tau) : ""});
  }
  out.tables["homogeneity.csv"] = csv.str();
  return out;
}

AnalysisOutput analyze_compression(const std::vector<json>& records, const std::string& run_id,
                                   const Manifest& manifest, Perceiver& perceiver, std::optional<int> jpeg_level,
                                   int repeats) {
  if (manifest.questions.empty()) fail(ErrorCode::EmptyInput, "the manifest lists no questions");
  std::optional<double> mrv_value;
  if (!jpeg_level) {
    mrv_value = first_mrv(records, run_id, DistortionKind::Jpeg).value;
    jpeg_level = std::clamp(static_cast<int>(std::floor(*mrv_value)), 0, 100);
  }
  StimulusSource source(manifest);
  std::vector<QuestionItem> items;
  for (const auto& q : manifest.questions) {
    const ReferenceEntry& entry = manifest.reference(q.reference);
    const Reference& ref = source.reference(q.reference);
    const auto* img = std::get_if<Raster>(&ref.content);
    if (img == nullptr) fail(ErrorCode::InvalidArgument, "question " + q.id + " refers to a text reference");
    items.push_back({q.id, q.reference, *img, static_cast<std::size_t>(fs::file_size(entry.path)), q.question,
                     q.answer, q.multiple_choice});
  }
  const CompressionReport rep = compression_eval(items, perceiver, *jpeg_level, repeats);

  AnalysisOutput out;
  out.document = {{"run", run_id},
                  {"jpeg_level", rep.jpeg_level},
                  {"quality_factor", rep.quality_factor},
                  {"repeats", rep.repeats},
                  {"questions", rep.questions},
                  {"changed", rep.changed},
                  {"response_change_ratio", rep.response_change_ratio},
                  {"saved_bpp", rep.saved_bpp},
                  {"outcomes", json::array()}};
  if (mrv_value) out.document["jpeg_mrv"] = *mrv_value;
  Csv csv({"question", "answer", "changed", "saved_bpp"});
  for (const auto& o : rep.outcomes) {
    out.document["outcomes"].push_back(
        {{"question", o.id}, {"answer", o.answer}, {"changed", o.changed}, {"saved_bpp", o.saved_bpp}});
    csv.row({o.id, o.answer, o.changed ? "true" : "false", num(o.saved_bpp)});
  }
  out.tables["compression.csv"] = csv.str();
  return out;
}

}  // namespace jndkit
