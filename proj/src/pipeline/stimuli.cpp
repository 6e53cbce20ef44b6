#include <variant>

#include "jndkit/errors.hpp"
#include "jndkit/pipeline.hpp"
#include "jndkit/store.hpp"

namespace jndkit {

namespace fs = std::filesystem;
using nlohmann::json;

StimulusSource::StimulusSource(const Manifest& manifest) : manifest_(manifest) {
  for (const auto& [ref, ladder] : manifest.ladder_plan()) {
    const auto key = std::make_pair(ref->id, ladder->spec.kind);
    if (!synthesized_.emplace(key, ladder).second)
      fail(ErrorCode::MalformedManifest,
           "two ladders of kind " + std::string(to_string(ladder->spec.kind)) + " for reference " + ref->id);
    ladders_.push_back({ref->id, ladder->spec.kind, ladder->spec.level_count});
  }
  for (const auto& entry : manifest.ingested) {
    const auto key = std::make_pair(entry.reference, entry.kind);
    if (synthesized_.count(key) || !ingested_.emplace(key, &entry).second)
      fail(ErrorCode::MalformedManifest,
           "two ladders of kind " + std::string(to_string(entry.kind)) + " for reference " + entry.reference);
    ladders_.push_back({entry.reference, entry.kind, static_cast<int>(entry.files.size())});
  }
}

const StimulusSource::Ladder& StimulusSource::ladder(const std::string& reference, DistortionKind kind) const {
  for (const auto& l : ladders_)
    if (l.reference == reference && l.kind == kind) return l;
  fail(ErrorCode::NotFound, "no " + std::string(to_string(kind)) + " ladder for reference " + reference);
}

const Reference& StimulusSource::reference(const std::string& id) {
  std::lock_guard lock(mutex_);
  if (const auto it = references_.find(id); it != references_.end()) return it->second;
  return references_.emplace(id, load_reference(manifest_.reference(id))).first->second;
}

Stimulus StimulusSource::stimulus(const std::string& reference_id, DistortionKind kind, int level) {
  const Ladder& l = ladder(reference_id, kind);
  if (level < 1 || level > l.level_count)
    fail(ErrorCode::LevelOutOfRange, "level " + std::to_string(level) + " outside [1, " +
                                         std::to_string(l.level_count) + "] for " + reference_id);
  const auto key = std::make_pair(reference_id, kind);
  if (const auto it = ingested_.find(key); it != ingested_.end()) {
    std::lock_guard lock(mutex_);
    auto& files = ingested_cache_[key];
    if (files.empty()) {
      IngestEntry entry{reference_id, kind, {}};
      for (const auto& f : it->second->files) entry.files.push_back({f.path, f.level});
      files = ingest_ladder(entry);
    }
    return files.at(static_cast<std::size_t>(level - 1));
  }
  {
    std::lock_guard lock(mutex_);
    if (const auto it = cache_.find({reference_id, kind, level}); it != cache_.end()) return it->second;
  }
  Stimulus s = make_stimulus(reference(reference_id), synthesized_.at(key)->spec, level);
  std::lock_guard lock(mutex_);
  return cache_.emplace(std::make_tuple(reference_id, kind, level), std::move(s)).first->second;
}

Content StimulusSource::content(const std::string& reference_id, DistortionKind kind, int level) {
  if (level == 0) {
    ladder(reference_id, kind);
    return reference(reference_id).content;
  }
  return stimulus(reference_id, kind, level).payload;
}

GenerateSummary generate(const Manifest& manifest, const fs::path& out_dir, Journal* journal) {
  StimulusSource source(manifest);
  fs::create_directories(out_dir);
  ContentStore store(out_dir / "store");
  const std::string run = "generate-" + manifest.config_hash().substr(0, 16);
  if (journal != nullptr)
    journal->append("provenance", {{"run", run},
                                   {"command", "generate"},
                                   {"version", kToolkitVersion},
                                   {"config_hash", manifest.config_hash()},
                                   {"seed", manifest.seed},
                                   {"deterministic", manifest.deterministic}});

  GenerateSummary summary;
  json refs = json::array();
  for (const auto& entry : manifest.references) {
    const Reference& ref = source.reference(entry.id);
    const bool text = std::holds_alternative<std::string>(ref.content);
    const Bytes bytes = stored_bytes(ref.content);
    const std::string ext = text ? "txt" : "png";
    const std::string hash = store.put(bytes, ext);
    refs.push_back({{"id", entry.id}, {"sha256", hash}, {"file", store.relative_path(hash, ext).generic_string()}});
    ++summary.references;
  }

  json stimuli = json::array();
  for (const auto& l : source.ladders()) {
    for (int level = 1; level <= l.level_count; ++level) {
      const Stimulus s = source.stimulus(l.reference, l.kind, level);
      const std::string ext(stored_extension(s));
      const std::string hash = store.put(stored_bytes(s), ext);
      json item{{"reference", l.reference},
                {"kind", to_string(l.kind)},
                {"level", level},
                {"param", s.param_value},
                {"sha256", hash},
                {"file", store.relative_path(hash, ext).generic_string()}};
      if (journal != nullptr) {
        json body = item;
        body["run"] = run;
        journal->append("stimulus", std::move(body));
      }
      stimuli.push_back(std::move(item));
      ++summary.stimuli;
    }
  }

  const json index{{"version", kToolkitVersion},
                   {"config_hash", manifest.config_hash()},
                   {"references", std::move(refs)},
                   {"stimuli", std::move(stimuli)}};
  summary.index = out_dir / "index.json";
  write_text_file(summary.index, index.dump(2) + "\n");
  return summary;
}

}  // namespace jndkit
