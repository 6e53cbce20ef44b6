#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jndkit/codec.hpp"
#include "jndkit/ladder.hpp"
#include "jndkit/raster.hpp"
#include "jndkit/text_attack.hpp"

namespace jndkit {

/// An image or a text prompt.
using Content = std::variant<std::string, Raster>;

struct Reference {
  std::string id;
  Content content;
};

/// One ladder element. Level is in [1, level_count]; the reference itself
/// (level 0) is never represented as a Stimulus.
struct Stimulus {
  std::string reference_id;
  DistortionKind kind = DistortionKind::Blur;
  int level = 1;
  double param_value = 0.0;
  Content payload;
  /// The stored stream when it must be kept verbatim: the JPEG bitstream for
  /// JPEG stimuli, the original file for ingested ones. Empty otherwise.
  Bytes encoded;
};

struct SynthesisOptions {
  SynonymProvider* synonyms = nullptr;
};

/// Seed consumed by stochastic kinds for one (reference, level).
std::uint64_t stimulus_seed(const LadderSpec& spec, std::string_view reference_id, int level) noexcept;

/// Deterministic in (reference, spec, level).
Stimulus make_stimulus(const Reference& reference, const LadderSpec& spec, int level,
                       const SynthesisOptions& options = {});

/// Levels 1..level_count in order. The kind must be synthesizable.
std::vector<Stimulus> build_ladder(const Reference& reference, const LadderSpec& spec,
                                   const SynthesisOptions& options = {});

/// Bytes persisted for a stimulus and the matching file extension.
Bytes stored_bytes(const Stimulus& stimulus);
std::string_view stored_extension(const Stimulus& stimulus);
Bytes stored_bytes(const Content& content);

struct IngestFile {
  std::filesystem::path path;
  double level = 0.0;
};

/// Externally produced ladder (banding, field of view).
struct IngestEntry {
  std::string reference_id;
  DistortionKind kind = DistortionKind::Banding;
  std::vector<IngestFile> files;
};

/// Loads files unmodified. Throws EmptyLadder, NonMonotoneLevels (levels
/// must strictly increase) or MissingFile.
std::vector<Stimulus> ingest_ladder(const IngestEntry& entry);

}  // namespace jndkit
