#include "jndkit/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "jndkit/codec.hpp"
#include "jndkit/errors.hpp"
#include "jndkit/store.hpp"

namespace jndkit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorCode::MalformedManifest, where + ": " + what);
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad(where, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return need(obj, key, where).get<T>();
  } catch (const json::exception& e) {
    bad(where + "." + key, e.what());
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return get<T>(obj, key, where);
}

DistortionKind kind_of(const json& obj, const std::string& where) {
  const auto name = get<std::string>(obj, "kind", where);
  const auto kind = parse_distortion_kind(name);
  if (!kind) bad(where + ".kind", "unknown distortion kind \"" + name + "\"");
  return *kind;
}

void check_file(const fs::path& path, const std::string& expected, bool verify, const std::string& where) {
  if (!fs::exists(path)) fail(ErrorCode::MissingFile, path.string() + " (" + where + ")");
  if (!verify) return;
  if (sha256_file(path) != expected)
    fail(ErrorCode::ChecksumMismatch, path.string() + " does not match its recorded sha256 (" + where + ")");
}

EndpointConfig endpoint_of(const json& obj, const std::string& where) {
  EndpointConfig c;
  c.endpoint = get_or<std::string>(obj, "endpoint", "", where);
  c.model = get_or<std::string>(obj, "model", "", where);
  if (const auto env = get_or<std::string>(obj, "api_key_env", "", where); !env.empty())
    if (const char* v = std::getenv(env.c_str())) c.api_key = v;
  c.timeout = std::chrono::milliseconds(get_or<long>(obj, "timeout_ms", 60000, where));
  c.max_concurrency = get_or<int>(obj, "max_concurrency", 4, where);
  c.requests_per_second = get_or<double>(obj, "requests_per_second", 0.0, where);
  c.retry.max_attempts = get_or<int>(obj, "max_attempts", 5, where);
  if (c.max_concurrency < 1) bad(where + ".max_concurrency", "must be at least 1");
  if (c.retry.max_attempts < 1) bad(where + ".max_attempts", "must be at least 1");
  return c;
}

std::vector<StudyTrialEntry> trials_of(const json& doc, const char* key, bool ranged, const std::string& where) {
  std::vector<StudyTrialEntry> out;
  if (!doc.contains(key)) return out;
  int i = 0;
  for (const auto& t : doc.at(key)) {
    const std::string w = where + "." + key + "[" + std::to_string(i++) + "]";
    StudyTrialEntry e;
    e.reference = get<std::string>(t, "reference", w);
    e.kind = kind_of(t, w);
    if (ranged) {
      e.lo = get<double>(t, "lo", w);
      e.hi = get<double>(t, "hi", w);
      if (!(e.lo > 0.0) || e.hi < e.lo) bad(w, "ground-truth range needs 0 < lo <= hi");
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace

const ReferenceEntry& Manifest::reference(const std::string& id) const {
  for (const auto& r : references)
    if (r.id == id) return r;
  fail(ErrorCode::NotFound, "unknown reference \"" + id + "\"");
}

const PerceiverEntry& Manifest::perceiver(const std::string& name) const {
  const auto it = perceivers.find(name);
  if (it == perceivers.end()) fail(ErrorCode::NotFound, "unknown perceiver \"" + name + "\"");
  return it->second;
}

std::string Manifest::config_hash() const { return sha256_hex(document.dump()); }

std::vector<std::pair<const ReferenceEntry*, const LadderEntry*>> Manifest::ladder_plan() const {
  std::vector<std::pair<const ReferenceEntry*, const LadderEntry*>> plan;
  for (const auto& ladder : ladders) {
    if (ladder.references.empty()) {
      for (const auto& ref : references)
        if (ref.text == is_text_kind(ladder.spec.kind)) plan.emplace_back(&ref, &ladder);
    } else {
      for (const auto& id : ladder.references) plan.emplace_back(&reference(id), &ladder);
    }
  }
  return plan;
}

Manifest parse_manifest(const json& doc, const fs::path& base_dir, bool verify_checksums) {
  if (!doc.is_object()) bad("manifest", "top level must be an object");
  Manifest m;
  m.document = doc;
  m.base_dir = base_dir;
  m.version = get_or<int>(doc, "version", 1, "manifest");
  if (m.version != 1) bad("manifest.version", "unsupported version " + std::to_string(m.version));
  m.name = get_or<std::string>(doc, "name", "", "manifest");
  m.seed = get_or<std::uint64_t>(doc, "seed", 0, "manifest");
  m.deterministic = get_or<bool>(doc, "deterministic", false, "manifest");

  std::set<std::string> ids;
  int i = 0;
  for (const auto& r : need(doc, "references", "manifest")) {
    const std::string w = "references[" + std::to_string(i++) + "]";
    ReferenceEntry e;
    e.id = get<std::string>(r, "id", w);
    e.path = base_dir / get<std::string>(r, "path", w);
    e.sha256 = get<std::string>(r, "sha256", w);
    const auto type = get_or<std::string>(r, "type", "image", w);
    if (type != "image" && type != "text") bad(w + ".type", "must be image or text");
    e.text = type == "text";
    if (e.id.empty() || e.id.find_first_of("/|\\") != std::string::npos) bad(w + ".id", "invalid id \"" + e.id + "\"");
    if (!ids.insert(e.id).second) bad(w + ".id", "duplicate id \"" + e.id + "\"");
    check_file(e.path, e.sha256, verify_checksums, w);
    m.references.push_back(std::move(e));
  }

  i = 0;
  for (const auto& l : doc.value("ladders", json::array())) {
    const std::string w = "ladders[" + std::to_string(i++) + "]";
    LadderEntry e;
    const DistortionKind kind = kind_of(l, w);
    if (is_ingested(kind)) bad(w + ".kind", std::string(to_string(kind)) + " ladders must be listed under \"ingested\"");
    e.spec = default_ladder(kind, get_or<std::uint64_t>(l, "seed", m.seed, w));
    e.spec.level_count = get_or<int>(l, "level_count", e.spec.level_count, w);
    e.spec.param_start = get_or<double>(l, "param_start", e.spec.param_start, w);
    e.spec.param_end = get_or<double>(l, "param_end", e.spec.param_end, w);
    e.spec.payload = get_or<std::string>(l, "payload", e.spec.payload, w);
    try {
      validate(e.spec);
    } catch (const Error& err) {
      bad(w, err.what());
    }
    e.references = get_or<std::vector<std::string>>(l, "references", {}, w);
    for (const auto& id : e.references) {
      if (!ids.count(id)) bad(w + ".references", "unknown reference \"" + id + "\"");
      if (m.reference(id).text != is_text_kind(kind)) bad(w + ".references", "\"" + id + "\" has the wrong type");
    }
    m.ladders.push_back(std::move(e));
  }

  i = 0;
  for (const auto& g : doc.value("ingested", json::array())) {
    const std::string w = "ingested[" + std::to_string(i++) + "]";
    IngestedEntry e;
    e.reference = get<std::string>(g, "reference", w);
    if (!ids.count(e.reference)) bad(w + ".reference", "unknown reference \"" + e.reference + "\"");
    e.kind = kind_of(g, w);
    if (!is_ingested(e.kind)) bad(w + ".kind", std::string(to_string(e.kind)) + " is synthesized, not ingested");
    int j = 0;
    for (const auto& f : need(g, "files", w)) {
      const std::string fw = w + ".files[" + std::to_string(j++) + "]";
      IngestedFileEntry fe{base_dir / get<std::string>(f, "path", fw), get<double>(f, "level", fw),
                           get<std::string>(f, "sha256", fw)};
      check_file(fe.path, fe.sha256, verify_checksums, fw);
      e.files.push_back(std::move(fe));
    }
    if (e.files.empty()) fail(ErrorCode::EmptyLadder, w + " lists no files");
    m.ingested.push_back(std::move(e));
  }

  if (doc.contains("perceivers")) {
    for (const auto& [name, p] : doc.at("perceivers").items()) {
      const std::string w = "perceivers." + name;
      PerceiverEntry e;
      e.name = name;
      const auto type = get<std::string>(p, "type", w);
      if (type == "simulated") {
        e.type = PerceiverType::Simulated;
        e.simulated.threshold = get<double>(p, "threshold", w);
        e.simulated.lapse_rate = get_or<double>(p, "lapse_rate", 0.0, w);
        e.simulated.seed = get_or<std::uint64_t>(p, "seed", m.seed, w);
        e.simulated.additive = get_or<bool>(p, "additive", false, w);
        const auto style = get_or<std::string>(p, "analysis_style", "consistent", w);
        const auto parsed = parse_analysis_style(style);
        if (!parsed) bad(w + ".analysis_style", "unknown style \"" + style + "\"");
        e.simulated.analysis_style = *parsed;
        try {
          validate(e.simulated);
        } catch (const Error& err) {
          bad(w, err.what());
        }
      } else if (type == "remote") {
        e.type = PerceiverType::Remote;
        e.endpoint = endpoint_of(p, w);
        if (e.endpoint.endpoint.empty() || e.endpoint.model.empty()) bad(w, "remote perceivers need endpoint and model");
      } else if (type == "replay") {
        e.type = PerceiverType::Replay;
        e.journal = base_dir / get<std::string>(p, "journal", w);
      } else {
        bad(w + ".type", "unknown perceiver type \"" + type + "\"");
      }
      m.perceivers.emplace(name, std::move(e));
    }
  }

  if (doc.contains("checker")) {
    const auto& c = doc.at("checker");
    const auto type = get_or<std::string>(c, "type", "stub", "checker");
    if (type == "stub") m.checker.type = CheckerType::Stub;
    else if (type == "heuristic") m.checker.type = CheckerType::Heuristic;
    else if (type == "http") m.checker.type = CheckerType::Http, m.checker.endpoint = endpoint_of(c, "checker");
    else bad("checker.type", "unknown checker type \"" + type + "\"");
  }

  if (doc.contains("run")) {
    const auto& r = doc.at("run");
    m.run.window = get_or<int>(r, "window", 3, "run");
    m.run.repeats = get_or<int>(r, "repeats", 3, "run");
    const auto mode = get_or<std::string>(r, "prompt_mode", "implicit", "run");
    const auto parsed = parse_prompt_mode(mode);
    if (!parsed) bad("run.prompt_mode", "must be implicit or explicit");
    m.run.prompt.mode = *parsed;
    m.run.prompt.implicit_template = get_or<std::string>(r, "implicit_template", m.run.prompt.implicit_template, "run");
    m.run.prompt.explicit_template = get_or<std::string>(r, "explicit_template", m.run.prompt.explicit_template, "run");
    if (r.contains("flags")) {
      const auto& f = r.at("flags");
      m.run.term.positive_flag = get_or<std::string>(f, "positive", m.run.term.positive_flag, "run.flags");
      m.run.term.negative_flag = get_or<std::string>(f, "negative", m.run.term.negative_flag, "run.flags");
      m.run.term.positive_answer = get_or<std::string>(f, "positive_answer", m.run.term.positive_answer, "run.flags");
      m.run.term.negative_answer = get_or<std::string>(f, "negative_answer", m.run.term.negative_answer, "run.flags");
    }
  }
  if (m.run.window < 1) bad("run.window", "must be at least 1");
  if (m.run.repeats < 1 || m.run.repeats % 2 == 0) bad("run.repeats", "must be a positive odd number");
  try {
    validate(m.run.term);
    if (m.run.prompt.mode == PromptMode::Explicit) render_prompt(m.run.prompt, DistortionKind::Blur);
  } catch (const Error& err) {
    bad("run", err.what());
  }

  i = 0;
  for (const auto& q : doc.value("questions", json::array())) {
    const std::string w = "questions[" + std::to_string(i++) + "]";
    QuestionEntry e{get<std::string>(q, "id", w), get<std::string>(q, "reference", w), get<std::string>(q, "question", w),
                    get<std::string>(q, "answer", w), get_or<bool>(q, "multiple_choice", false, w)};
    if (!ids.count(e.reference)) bad(w + ".reference", "unknown reference \"" + e.reference + "\"");
    m.questions.push_back(std::move(e));
  }

  if (doc.contains("study")) {
    const auto& s = doc.at("study");
    m.study.training = trials_of(s, "training", false, "study");
    m.study.quiz = trials_of(s, "quiz", true, "study");
    m.study.main = trials_of(s, "main", false, "study");
    for (const auto* list : {&m.study.training, &m.study.quiz, &m.study.main})
      for (const auto& t : *list)
        if (!ids.count(t.reference)) bad("study", "unknown reference \"" + t.reference + "\"");
  }
  return m;
}

Manifest load_manifest(const fs::path& path, bool verify_checksums) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MissingFile, path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    bad(path.string(), e.what());
  }
  return parse_manifest(doc, path.parent_path(), verify_checksums);
}

Reference load_reference(const ReferenceEntry& entry) {
  if (entry.text) {
    const Bytes data = read_file(entry.path);
    return {entry.id, std::string(data.begin(), data.end())};
  }
  return {entry.id, read_image(entry.path)};
}

}  // namespace jndkit
