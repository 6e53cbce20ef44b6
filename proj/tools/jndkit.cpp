// jndkit command line: generate, probe, analyze, study serve, replay.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

#include "jndkit/errors.hpp"
#include "jndkit/pipeline.hpp"
#include "jndkit/records.hpp"
#include "jndkit/remote.hpp"
#include "jndkit/study.hpp"

namespace fs = std::filesystem;
using namespace jndkit;
using nlohmann::json;

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

Clock clock_for(bool deterministic, const Manifest* manifest = nullptr) {
  return deterministic || (manifest != nullptr && manifest->deterministic) ? logical_clock() : system_clock();
}

DistortionKind kind_arg(const std::string& name) {
  const auto kind = parse_distortion_kind(name);
  if (!kind) fail(ErrorCode::InvalidArgument, "unknown distortion kind \"" + name + "\"");
  return *kind;
}

std::unique_ptr<Perceiver> perceiver_for(const Manifest& manifest, const std::string& name) {
  if (!manifest.perceivers.count(name) && name == "env") {
    EndpointConfig base;
    return std::make_unique<RemoteChatPerceiver>(endpoint_from_env(base));
  }
  return make_perceiver(manifest.perceiver(name));
}

void print_tables(const AnalysisOutput& out) {
  for (const auto& [name, text] : out.tables) std::cout << "# " << name << "\n" << text;
}

/// Perceiver exchanges made during an analysis are journaled too.
JournaledPerceiver::Sink exchange_sink(Journal& journal, const std::string& analysis) {
  return [&journal, analysis](const ComparisonQuery& q, const Reply& r) {
    journal.append("exchange", {{"analysis", analysis},
                                {"reference", q.reference_id},
                                {"kind", to_string(q.kind)},
                                {"anchor", q.anchor_level},
                                {"candidate", q.candidate_level},
                                {"repeat", q.repeat},
                                {"tag", q.tag},
                                {"key", q.key()},
                                {"text", r.text},
                                {"latency_ms", r.latency_ms}});
  };
}

StudyServer* active_server = nullptr;

void stop_server(int) {
  if (active_server != nullptr) active_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Just-noticeable-difference toolkit for machine perceivers"};
  app.require_subcommand(1);
  bool deterministic = false;
  app.add_flag("--deterministic", deterministic, "Logical journal timestamps for byte-reproducible runs");
  app.set_version_flag("--version", kToolkitVersion);

  // generate
  auto* gen = app.add_subcommand("generate", "Materialize every ladder into a content store");
  std::string gen_manifest, gen_out, gen_journal;
  gen->add_option("--manifest", gen_manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--journal", gen_journal, "Also journal provenance and stimulus records");

  // probe
  auto* probe_cmd = app.add_subcommand("probe", "Determine JND points for every ladder");
  std::string probe_manifest, probe_journal = "journal.ndjson", prompt_mode;
  ProbeOptions probe_opts;
  int window = 0, repeats = 0;
  std::vector<std::string> kinds;
  probe_cmd->add_option("--manifest", probe_manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  probe_cmd->add_option("--perceiver", probe_opts.perceiver, "Perceiver name from the manifest, or env")->required();
  probe_cmd->add_option("--window", window, "Sliding window width w >= 1")
      ->check(CLI::Validator(
          [](std::string& v) { return std::atoi(v.c_str()) >= 1 ? std::string() : std::string("window must be at least 1"); },
          "W>=1"));
  probe_cmd->add_option("--repeats", repeats, "Odd number of repeats per comparison")
      ->check(CLI::Validator(
          [](std::string& v) {
            const int r = std::atoi(v.c_str());
            return r >= 1 && r % 2 == 1 ? std::string() : std::string("repeats must be a positive odd number");
          },
          "ODD"));
  probe_cmd->add_option("--prompt-mode", prompt_mode, "implicit or explicit")
      ->check(CLI::IsMember({"implicit", "explicit"}));
  probe_cmd->add_option("--journal", probe_journal, "Journal file (appended; resumes an interrupted run)");
  probe_cmd->add_option("--kinds", kinds, "Restrict to these kinds")->delimiter(',');
  probe_cmd->add_flag("--sweep", probe_opts.sweep, "Also walk widths 1..5 for the width sweep report");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Analyses over journaled results");
  analyze->require_subcommand(1);
  std::vector<std::string> journals;
  std::string run, out_dir, an_manifest, an_perceiver, source_kind, injected_kind;
  bool injected_first = false, all_refs = false;
  int level = -1, an_repeats = 3;
  const auto common = [&](CLI::App* c, bool many) {
    if (many) {
      c->add_option("--journal", journals, "Journal files")->required()->check(CLI::ExistingFile);
    } else {
      c->add_option("--journal", journals, "Journal file")->required()->expected(1)->check(CLI::ExistingFile);
      c->add_option("--run", run, "Run id (needed when the journal holds several)");
    }
    c->add_option("--out", out_dir, "Write a JSON document and CSV tables here");
  };
  auto* an_mrv = analyze->add_subcommand("mrv", "MRV per kind and JND curves");
  common(an_mrv, false);
  auto* an_report = analyze->add_subcommand("report", "Error incidence, word length and width sweep");
  common(an_report, false);
  auto* an_corr = analyze->add_subcommand("correlate", "Pearson correlation of MRVs across kinds");
  common(an_corr, true);
  auto* an_homo = analyze->add_subcommand("homogeneity", "Composite-distortion imperceptibility table");
  common(an_homo, false);
  auto* an_comp = analyze->add_subcommand("compression", "JND-guided JPEG recompression evaluation");
  common(an_comp, false);
  for (auto* c : {an_homo, an_comp}) {
    c->add_option("--manifest", an_manifest, "Manifest file")->required()->check(CLI::ExistingFile);
    c->add_option("--perceiver", an_perceiver, "Perceiver name from the manifest, or env")->required();
  }
  an_homo->add_option("--source", source_kind, "Source distortion kind")->required();
  an_homo->add_option("--injected", injected_kind, "Injected distortion kind")->required();
  an_homo->add_flag("--injected-first", injected_first, "Apply the injected distortion first");
  an_homo->add_flag("--all-references", all_refs, "Skip the above-average reference filter");
  an_comp->add_option("--level", level, "JPEG level; default floor(MRV) of the run")->check(CLI::Range(0, 100));
  an_comp->add_option("--repeats", an_repeats, "Repeats per question")->check(CLI::PositiveNumber);

  // study
  auto* study = app.add_subcommand("study", "Human subjective study");
  study->require_subcommand(1);
  auto* serve = study->add_subcommand("serve", "Serve the study HTTP endpoints");
  std::string study_manifest, study_journal = "study.ndjson", host = "127.0.0.1", ui_dir;
  int port = 8080;
  serve->add_option("--manifest", study_manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  serve->add_option("--port", port, "Port (0 picks one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--journal", study_journal, "Study journal; state is rebuilt from it on start");
  serve->add_option("--ui-dir", ui_dir, "Static UI directory served at /")->check(CLI::ExistingDirectory);

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "Regenerate journaled JND results without a perceiver");
  std::string replay_journal, replay_out;
  replay_cmd->add_option("--journal", replay_journal, "Journal file")->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("--out", replay_out, "Write regenerated results as newline-delimited records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (gen->parsed()) {
      const Manifest manifest = load_manifest(gen_manifest);
      std::unique_ptr<Journal> journal;
      if (!gen_journal.empty()) journal = std::make_unique<Journal>(gen_journal, clock_for(deterministic, &manifest));
      const auto summary = generate(manifest, gen_out, journal.get());
      std::cout << "generated " << summary.stimuli << " stimuli from " << summary.references << " references; index "
                << summary.index.string() << "\n";
      return 0;
    }

    if (probe_cmd->parsed()) {
      const Manifest manifest = load_manifest(probe_manifest);
      if (window > 0) probe_opts.window = window;
      if (repeats > 0) probe_opts.repeats = repeats;
      if (!prompt_mode.empty()) probe_opts.prompt_mode = parse_prompt_mode(prompt_mode);
      for (const auto& k : kinds) probe_opts.kinds.push_back(kind_arg(k));
      auto perceiver = perceiver_for(manifest, probe_opts.perceiver);
      auto checker = make_checker(manifest.checker);
      Journal journal(probe_journal, clock_for(deterministic, &manifest));
      const auto summary = probe(manifest, probe_opts, journal, *perceiver, checker.get());
      for (const auto& r : summary.results) {
        std::cout << r.reference_id << " " << to_string(r.kind) << ":";
        for (int l : r.levels) std::cout << " " << l;
        if (r.censored) std::cout << " (> " << r.level_count << " beyond)";
        std::cout << "\n";
      }
      std::cout << "run " << summary.run_id << ": " << summary.results.size() << " results ("
                << summary.resumed_results << " resumed), " << summary.perceiver_calls << " perceiver calls, "
                << summary.cached_calls << " served from the journal\n";
      return 0;
    }

    if (analyze->parsed()) {
      AnalysisOutput out;
      std::string name;
      if (an_corr->parsed()) {
        std::vector<std::vector<json>> all;
        for (const auto& j : journals) all.push_back(read_journal(j).records);
        out = analyze_correlate(all);
        name = "correlate";
      } else {
        Journal journal(journals.front(), clock_for(deterministic));
        const auto& records = journal.existing();
        const std::string id = select_run(records, run);
        if (an_mrv->parsed()) {
          out = analyze_mrv(records, id), name = "mrv";
        } else if (an_report->parsed()) {
          out = analyze_report(records, id), name = "report";
        } else {
          const Manifest manifest = load_manifest(an_manifest);
          auto inner = perceiver_for(manifest, an_perceiver);
          name = an_homo->parsed() ? "homogeneity" : "compression";
          JournaledPerceiver perceiver(*inner, exchange_sink(journal, name));
          if (an_homo->parsed()) {
            auto checker = make_checker(manifest.checker);
            HomogeneityRequest req{kind_arg(source_kind), kind_arg(injected_kind), !injected_first, !all_refs};
            out = analyze_homogeneity(records, id, manifest, perceiver, checker.get(), req);
          } else {
            out = analyze_compression(records, id, manifest, perceiver,
                                      level >= 0 ? std::optional<int>(level) : std::nullopt, an_repeats);
          }
        }
        journal.append("analysis", {{"run", id}, {"analysis", name}, {"result", out.document}});
      }
      if (!out_dir.empty()) write_output(out, out_dir, name);
      print_tables(out);
      return 0;
    }

    if (serve->parsed()) {
      const Manifest manifest = load_manifest(study_manifest);
      Journal journal(study_journal, clock_for(deterministic, &manifest));
      StudyService service(manifest, journal);
      StudyServer server(service, ui_dir.empty() ? std::nullopt : std::optional<fs::path>(ui_dir));
      const int bound = server.bind(host, port);
      active_server = &server;
      std::signal(SIGINT, stop_server);
      std::signal(SIGTERM, stop_server);
      std::cout << "study service listening on http://" << host << ":" << bound << "\n" << std::flush;
      server.listen();
      active_server = nullptr;
      return 0;
    }

    if (replay_cmd->parsed()) {
      const auto read = read_journal(replay_journal);
      if (read.discarded_tail_bytes > 0)
        std::cerr << "jndkit: ignored " << read.discarded_tail_bytes << " bytes of an unterminated final record\n";
      const auto summary = replay(read.records);
      std::unique_ptr<std::ofstream> out;
      if (!replay_out.empty()) out = std::make_unique<std::ofstream>(replay_out, std::ios::binary);
      for (const auto& r : summary.results) {
        json body = to_json(r.regenerated);
        body["run"] = r.run_id;
        if (out) *out << body.dump() << "\n";
        std::cout << (r.identical ? "identical " : "MISMATCH  ") << r.run_id << " " << r.regenerated.reference_id
                  << " " << to_string(r.regenerated.kind) << "\n";
      }
      std::cout << summary.results.size() << " results replayed from " << summary.lookups
                << " journaled answers, 0 perceiver calls, " << summary.mismatches << " mismatches\n";
      return summary.mismatches == 0 ? 0 : kRuntimeError;
    }
  } catch (const Error& e) {
    std::cerr << "jndkit: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "jndkit: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}
