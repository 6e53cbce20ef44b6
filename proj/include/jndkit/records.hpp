#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "jndkit/determination.hpp"

namespace jndkit {

/// Journal body of a JND result; the verdict log is a list of
/// [anchor, candidate, verdict] triples.
nlohmann::json to_json(const JndResult& result);
/// Throws MalformedJournal on missing or ill-typed fields.
JndResult jnd_result_from_json(const nlohmann::json& body);

/// Records of one type, optionally restricted to a run id.
std::vector<nlohmann::json> records_of(const std::vector<nlohmann::json>& records, const std::string& type,
                                       const std::string& run_id = {});

/// Run ids in order of their provenance records.
std::vector<std::string> run_ids(const std::vector<nlohmann::json>& records);

}  // namespace jndkit
