#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "jndkit/ladder.hpp"
#include "jndkit/perceiver.hpp"
#include "jndkit/remote.hpp"
#include "jndkit/stimulus.hpp"
#include "jndkit/validator.hpp"

namespace jndkit {

struct ReferenceEntry {
  std::string id;
  std::filesystem::path path;  ///< resolved against the manifest directory
  std::string sha256;
  bool text = false;
};

struct LadderEntry {
  LadderSpec spec;
  /// Reference ids; empty means every reference of a compatible type.
  std::vector<std::string> references;
};

struct IngestedFileEntry {
  std::filesystem::path path;
  double level = 0.0;
  std::string sha256;
};

struct IngestedEntry {
  std::string reference;
  DistortionKind kind = DistortionKind::Banding;
  std::vector<IngestedFileEntry> files;
};

enum class PerceiverType { Simulated, Remote, Replay };

struct PerceiverEntry {
  std::string name;
  PerceiverType type = PerceiverType::Simulated;
  SimulatedPerceiverConfig simulated;
  EndpointConfig endpoint;        ///< remote only
  std::filesystem::path journal;  ///< replay only
};

enum class CheckerType { Stub, Heuristic, Http };

struct CheckerEntry {
  CheckerType type = CheckerType::Stub;
  EndpointConfig endpoint;
};

struct RunEntry {
  int window = 3;
  int repeats = 3;
  PromptConfig prompt;
  GroundTruthTerm term;
};

struct QuestionEntry {
  std::string id;
  std::string reference;
  std::string question;
  std::string answer;
  bool multiple_choice = false;
};

struct StudyTrialEntry {
  std::string reference;
  DistortionKind kind = DistortionKind::Blur;
  double lo = 0.0;  ///< ground-truth range, quiz trials only
  double hi = 0.0;
};

struct StudyEntry {
  std::vector<StudyTrialEntry> training;
  std::vector<StudyTrialEntry> quiz;
  std::vector<StudyTrialEntry> main;
};

struct Manifest {
  int version = 1;
  std::string name;
  std::uint64_t seed = 0;
  /// Logical journal timestamps, for byte-reproducible runs.
  bool deterministic = false;
  std::filesystem::path base_dir;
  std::vector<ReferenceEntry> references;
  std::vector<LadderEntry> ladders;
  std::vector<IngestedEntry> ingested;
  std::map<std::string, PerceiverEntry> perceivers;
  CheckerEntry checker;
  RunEntry run;
  std::vector<QuestionEntry> questions;
  StudyEntry study;
  nlohmann::json document;  ///< as loaded

  const ReferenceEntry& reference(const std::string& id) const;
  const PerceiverEntry& perceiver(const std::string& name) const;
  /// sha256 of the canonical document.
  std::string config_hash() const;
  /// (reference, ladder) pairs in manifest order, ladder references
  /// expanded.
  std::vector<std::pair<const ReferenceEntry*, const LadderEntry*>> ladder_plan() const;
};

/// Parses and validates; MalformedManifest names the offending field,
/// ChecksumMismatch names the file.
Manifest load_manifest(const std::filesystem::path& path, bool verify_checksums = true);
Manifest parse_manifest(const nlohmann::json& document, const std::filesystem::path& base_dir,
                        bool verify_checksums = true);

/// Decodes the reference file as an image or reads it as text.
Reference load_reference(const ReferenceEntry& entry);

}  // namespace jndkit
