#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "jndkit/determination.hpp"
#include "jndkit/journal.hpp"
#include "jndkit/manifest.hpp"

namespace jndkit {

inline constexpr const char* kToolkitVersion = "0.3.0";

/// Lazily materialized ladders of a manifest, memoized and safe to share
/// between threads.
class StimulusSource {
 public:
  struct Ladder {
    std::string reference;
    DistortionKind kind = DistortionKind::Blur;
    int level_count = 0;
  };

  explicit StimulusSource(const Manifest& manifest);

  /// Synthesized ladders in manifest order, then ingested ones.
  const std::vector<Ladder>& ladders() const noexcept { return ladders_; }
  /// NotFound when the manifest has no such ladder.
  const Ladder& ladder(const std::string& reference, DistortionKind kind) const;
  const Reference& reference(const std::string& id);
  /// Level in [1, level_count]; LevelOutOfRange otherwise.
  Stimulus stimulus(const std::string& reference, DistortionKind kind, int level);
  /// Level 0 is the reference itself.
  Content content(const std::string& reference, DistortionKind kind, int level);

 private:
  const Manifest& manifest_;
  std::vector<Ladder> ladders_;
  std::map<std::pair<std::string, DistortionKind>, const LadderEntry*> synthesized_;
  std::map<std::pair<std::string, DistortionKind>, const IngestedEntry*> ingested_;
  std::mutex mutex_;
  std::map<std::string, Reference> references_;
  std::map<std::pair<std::string, DistortionKind>, std::vector<Stimulus>> ingested_cache_;
  std::map<std::tuple<std::string, DistortionKind, int>, Stimulus> cache_;
};

struct GenerateSummary {
  int references = 0;
  int stimuli = 0;
  std::filesystem::path index;
};

/// Writes every ladder into a content store under `out_dir`/store and an
/// index.json describing it. When a journal is given, a provenance record
/// and one record per stimulus are appended.
GenerateSummary generate(const Manifest& manifest, const std::filesystem::path& out_dir, Journal* journal = nullptr);

std::unique_ptr<Perceiver> make_perceiver(const PerceiverEntry& entry);
std::unique_ptr<ContradictionChecker> make_checker(const CheckerEntry& entry);

struct ProbeOptions {
  std::string perceiver{};  ///< manifest perceiver name
  std::optional<int> window{};
  std::optional<int> repeats{};
  std::optional<PromptMode> prompt_mode{};
  /// Also walk widths 1..5 so the width sweep can be replayed later.
  bool sweep = false;
  /// Restrict to these kinds; empty means all.
  std::vector<DistortionKind> kinds{};
};

/// Effective run settings after CLI overrides.
RunEntry effective_run(const Manifest& manifest, const ProbeOptions& options);
std::string run_id(const Manifest& manifest, const ProbeOptions& options);

struct ProbeSummary {
  std::string run_id;
  std::vector<JndResult> results;  ///< includes results found in the journal
  int resumed_results = 0;         ///< skipped because already journaled
  long perceiver_calls = 0;        ///< calls that reached the perceiver
  long cached_calls = 0;           ///< answered from journaled comparisons
};

/// Runs determine_jnd over every ladder of the manifest, journaling
/// provenance, comparisons, confirmed anchors and results. Comparisons
/// already in the journal for this run are served from it, so an interrupted
/// probe restarts without repeating perceiver calls.
ProbeSummary probe(const Manifest& manifest, const ProbeOptions& options, Journal& journal, Perceiver& perceiver,
                   ContradictionChecker* checker);

struct ReplayedResult {
  std::string run_id;
  JndResult journaled;
  JndResult regenerated;
  bool identical = false;
};

struct ReplaySummary {
  std::vector<ReplayedResult> results;
  long lookups = 0;  ///< answers served from journaled comparisons
  int mismatches = 0;
};

/// Regenerates every journaled JndResult from the journaled comparisons
/// alone. CacheMiss when a needed comparison is absent.
ReplaySummary replay(const std::vector<nlohmann::json>& records);

/// Journaled results, optionally restricted to one run.
std::vector<JndResult> journaled_results(const std::vector<nlohmann::json>& records, const std::string& run_id = {});

/// The only probe run in the journal when `requested` is empty; NotFound
/// when the requested run is absent, InvalidArgument when ambiguous.
std::string select_run(const std::vector<nlohmann::json>& records, const std::string& requested);

/// A machine-readable result document plus named comma-separated tables.
struct AnalysisOutput {
  nlohmann::json document;
  std::map<std::string, std::string> tables;
};

void write_output(const AnalysisOutput& output, const std::filesystem::path& out_dir, const std::string& name);

/// MRV per kind and order, and level/flag curve series per result.
AnalysisOutput analyze_mrv(const std::vector<nlohmann::json>& records, const std::string& run_id);
/// Error incidence, response length and the width sweep.
AnalysisOutput analyze_report(const std::vector<nlohmann::json>& records, const std::string& run_id);
/// One model per probe run across all journals; 1st-JND MRV per kind,
/// censored means excluded.
AnalysisOutput analyze_correlate(const std::vector<std::vector<nlohmann::json>>& journals);

struct HomogeneityRequest {
  DistortionKind source = DistortionKind::Blur;
  DistortionKind injected = DistortionKind::Noise;
  bool source_first = true;
  /// Restrict to references whose first source JND is at least the mean.
  bool above_average = true;
};
AnalysisOutput analyze_homogeneity(const std::vector<nlohmann::json>& records, const std::string& run_id,
                                   const Manifest& manifest, Perceiver& perceiver, ContradictionChecker* checker,
                                   const HomogeneityRequest& request);

/// Uses floor(MRV) of the run's JPEG results when no level is given.
AnalysisOutput analyze_compression(const std::vector<nlohmann::json>& records, const std::string& run_id,
                                   const Manifest& manifest, Perceiver& perceiver, std::optional<int> jpeg_level,
                                   int repeats = 3);

nlohmann::json to_json(const PromptConfig& prompt);
PromptConfig prompt_config_from_json(const nlohmann::json& body);
nlohmann::json to_json(const GroundTruthTerm& term);
GroundTruthTerm term_from_json(const nlohmann::json& body);

}  // namespace jndkit
