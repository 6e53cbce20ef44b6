#include "jndkit/records.hpp"

#include <algorithm>

#include "jndkit/errors.hpp"

namespace jndkit {

using nlohmann::json;

json to_json(const JndResult& r) {
  json log = json::array();
  for (const auto& e : r.verdict_log) log.push_back({e.anchor, e.candidate, to_string(e.verdict)});
  return {{"reference", r.reference_id}, {"kind", to_string(r.kind)}, {"level_count", r.level_count},
          {"window", r.window},          {"levels", r.levels},        {"censored", r.censored},
          {"verdict_log", std::move(log)}};
}

JndResult jnd_result_from_json(const json& body) {
  try {
    JndResult r;
    r.reference_id = body.at("reference").get<std::string>();
    const auto kind = parse_distortion_kind(body.at("kind").get<std::string>());
    if (!kind) fail(ErrorCode::MalformedJournal, "unknown kind in jnd_result");
    r.kind = *kind;
    r.level_count = body.at("level_count").get<int>();
    r.window = body.at("window").get<int>();
    r.levels = body.at("levels").get<std::vector<int>>();
    r.censored = body.at("censored").get<bool>();
    for (const auto& e : body.at("verdict_log")) {
      const auto v = parse_verdict_class(e.at(2).get<std::string>());
      if (!v) fail(ErrorCode::MalformedJournal, "unknown verdict in jnd_result");
      r.verdict_log.push_back({e.at(0).get<int>(), e.at(1).get<int>(), *v});
    }
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::MalformedJournal, std::string("jnd_result: ") + e.what());
  }
}

std::vector<json> records_of(const std::vector<json>& records, const std::string& type, const std::string& run_id) {
  std::vector<json> out;
  for (const auto& r : records)
    if (r.value("type", "") == type && (run_id.empty() || r.value("run", "") == run_id)) out.push_back(r);
  return out;
}

std::vector<std::string> run_ids(const std::vector<json>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) {
    if (r.value("type", "") != "provenance") continue;
    const auto id = r.value("run", "");
    if (!id.empty() && std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  return out;
}

}  // namespace jndkit
