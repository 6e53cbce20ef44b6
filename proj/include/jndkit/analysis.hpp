#pragma once

#include <array>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jndkit/determination.hpp"
#include "jndkit/ladder.hpp"
#include "jndkit/perceiver.hpp"
#include "jndkit/stimulus.hpp"
#include "jndkit/validator.hpp"

namespace jndkit {

// ---------------------------------------------------------------- homogeneity

inline constexpr std::array<double, 5> kContaminationFractions{0.2, 0.4, 0.6, 0.8, 1.0};

struct ContaminationPlan {
  LadderSpec source;
  LadderSpec injected;
  double source_mrv = 0.0;
  double injected_mrv = 0.0;
  /// Fractions of floor(MRV); every entry must come from the five-point grid
  /// (or 0 for the injected axis, which gives the source-only column).
  std::vector<double> source_fractions{kContaminationFractions.begin(), kContaminationFractions.end()};
  std::vector<double> injected_fractions{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  /// Apply the source distortion first (default) or the injected one.
  bool source_first = true;
};

/// fraction * floor(mrv), rounded half away from zero.
int contamination_level(double fraction, double mrv);

struct HomogeneityCell {
  double source_fraction = 0.0;
  double injected_fraction = 0.0;
  int source_level = 0;
  int injected_level = 0;
  int validated = 0;
  int unchanged = 0;  ///< validated Negatives
  /// unchanged / validated; nullopt when nothing validated.
  std::optional<double> tau;
};

struct HomogeneityTable {
  ContaminationPlan plan;
  std::vector<HomogeneityCell> cells;  ///< row-major, source fraction outer

  const HomogeneityCell& at(std::size_t source_index, std::size_t injected_index) const;
};

struct JudgeSettings {
  GroundTruthTerm term;
  ContradictionChecker* checker = nullptr;
  int repeats = 3;
  PromptConfig prompt;
};

/// For each reference and cell, compares the composite (both distortions)
/// against the source-only image and records whether the perceiver judged
/// them unchanged.
HomogeneityTable homogeneity_test(const ContaminationPlan& plan, std::span<const Reference> references,
                                  Perceiver& perceiver, const JudgeSettings& settings);

/// References whose first JND is at or above the mean first JND.
std::vector<std::string> above_average_references(std::span<const JndResult> results);

// ---------------------------------------------------------------- compression

struct QuestionItem {
  std::string id;
  std::string reference_id;
  Raster image;
  /// Size of the stored original, used as the bit budget baseline.
  std::size_t original_bytes = 0;
  std::string question;
  std::string answer;  ///< baseline answer on the original image
  bool multiple_choice = false;
};

/// Trim, lowercase, collapse internal whitespace.
std::string normalize_answer(std::string_view answer);
/// First standalone choice letter A-E, e.g. "(b)" or "B." or "answer: c".
std::optional<char> extract_choice(std::string_view answer);
bool answers_differ(std::string_view a, std::string_view b, bool multiple_choice);
/// (original_bits - compressed_bits) / (width * height); negative when
/// recompression grows the file.
double saved_bits_per_pixel(std::size_t original_bits, std::size_t compressed_bits, int width, int height);

struct QuestionOutcome {
  std::string id;
  std::string answer;  ///< majority answer after recompression
  bool changed = false;
  double saved_bpp = 0.0;
};

struct CompressionReport {
  int jpeg_level = 0;
  int quality_factor = 0;  ///< 0 when no recompression happened
  int repeats = 3;
  int questions = 0;
  int changed = 0;
  double response_change_ratio = 0.0;
  double saved_bpp = 0.0;  ///< mean over distinct images
  std::vector<QuestionOutcome> outcomes;
};

/// Re-asks every question on the image recompressed at QF = 101 -
/// jpeg_level, majority over `repeats` asks. Level 0 means no recompression:
/// nothing is asked and both figures are 0.
CompressionReport compression_eval(std::span<const QuestionItem> questions, Perceiver& perceiver, int jpeg_level,
                                   int repeats = 3);

// ---------------------------------------------------------------- correlation

/// Models by kinds; nullopt marks censored or missing entries.
struct MrvMatrix {
  std::vector<std::string> models;
  std::vector<DistortionKind> kinds;
  std::vector<std::vector<std::optional<double>>> values;  ///< [model][kind]
};

struct CorrelationMatrix {
  std::vector<DistortionKind> kinds;
  std::vector<std::vector<double>> r;
  std::vector<std::vector<int>> samples;
};

/// Throws InsufficientData with fewer than 3 pairs or zero variance.
double pearson(std::span<const double> x, std::span<const double> y);
/// Pairwise-complete Pearson r between kind columns; unit diagonal.
CorrelationMatrix dimension_correlation(const MrvMatrix& matrix);

// ---------------------------------------------------------------- run report

struct IncidenceReport {
  long comparisons = 0;
  std::map<VerdictClass, long> counts;
  double correct_pct = 0.0;
  double antilogy_pct = 0.0;
  double gibberish_pct = 0.0;
  double deficiency_pct = 0.0;
  double mean_words = 0.0;
};

struct WidthSweepRow {
  int width = 1;
  int compared = 0;
  int disagreements = 0;
  /// The journal lacks verdicts needed to finish and the known prefix agrees.
  int unresolved = 0;
  double disagreement_pct = 0.0;  ///< over resolved comparisons
};

struct RunReport {
  std::string run_id;
  IncidenceReport incidence;
  std::vector<WidthSweepRow> sweep;  ///< widths 1..5 against width 5
};

IncidenceReport error_incidence(std::span<const nlohmann::json> comparison_records);

/// Incidence over the run's comparison records and a width sweep that
/// replays the journaled verdicts through determine_jnd. Throws EmptyJournal
/// when the run has no comparisons.
RunReport run_report(const std::vector<nlohmann::json>& records, const std::string& run_id);

/// Levels confirmed at width w from journaled verdicts; `complete` is false
/// when a needed pair was never journaled.
struct PartialJnd {
  std::vector<int> levels;
  bool complete = true;
};
PartialJnd replay_width(const std::map<std::pair<int, int>, VerdictClass>& verdicts, int level_count, int window);

/// "disagree", "agree" or "unresolved" for two possibly partial lists.
std::string_view compare_partial(const PartialJnd& a, const PartialJnd& b);

}  // namespace jndkit
