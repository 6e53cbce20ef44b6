#include "jndkit/study.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "jndkit/errors.hpp"

namespace jndkit {

using nlohmann::json;

std::string_view to_string(StudyPhase phase) noexcept {
  switch (phase) {
    case StudyPhase::Training: return "training";
    case StudyPhase::Quiz: return "quiz";
    case StudyPhase::Main: return "main";
    case StudyPhase::Complete: return "complete";
  }
  return "training";
}

std::optional<StudyPhase> parse_study_phase(std::string_view name) noexcept {
  for (auto p : {StudyPhase::Training, StudyPhase::Quiz, StudyPhase::Main, StudyPhase::Complete})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

std::vector<StudyTrial>& StudySession::trials(StudyPhase p) {
  return const_cast<std::vector<StudyTrial>&>(std::as_const(*this).trials(p));
}

const std::vector<StudyTrial>& StudySession::trials(StudyPhase p) const {
  switch (p) {
    case StudyPhase::Training: return training;
    case StudyPhase::Quiz: return quiz;
    case StudyPhase::Main: return main;
    case StudyPhase::Complete: break;
  }
  fail(ErrorCode::IllegalTransition, "a completed session has no trials to answer");
}

json to_json(const StudySession& s) {
  const auto trials = [](const std::vector<StudyTrial>& ts, bool bounds) {
    json out = json::array();
    for (const auto& t : ts) {
      json j{{"reference", t.reference},
             {"kind", to_string(t.kind)},
             {"level_count", t.level_count},
             {"position", t.position ? json(*t.position) : json(nullptr)}};
      if (bounds) j["lo"] = t.lo, j["hi"] = t.hi;
      out.push_back(std::move(j));
    }
    return out;
  };
  return {{"id", s.id},
          {"participant", s.participant},
          {"phase", to_string(s.phase)},
          {"quiz_failed", s.quiz_failed},
          {"quiz_score", s.quiz_score ? json(*s.quiz_score) : json(nullptr)},
          {"metadata", s.metadata},
          {"training", trials(s.training, false)},
          {"quiz", trials(s.quiz, true)},
          {"main", trials(s.main, false)}};
}

bool within_quiz_bounds(const StudyTrial& t) {
  if (!t.position) return false;
  const double p = *t.position;
  // p >= lo/1.5 written multiplicatively so boundary values compare exactly.
  return p * 1.5 >= t.lo && p <= 1.5 * t.hi;
}

namespace {

long count_within(std::span<const StudyTrial> quiz) {
  if (quiz.empty()) fail(ErrorCode::IncompleteQuiz, "the quiz has no trials");
  long within = 0;
  for (std::size_t i = 0; i < quiz.size(); ++i) {
    if (!quiz[i].position) fail(ErrorCode::IncompleteQuiz, "quiz trial " + std::to_string(i) + " is unanswered");
    within += within_quiz_bounds(quiz[i]);
  }
  return within;
}

}  // namespace

double quiz_score(std::span<const StudyTrial> quiz) {
  return static_cast<double>(count_within(quiz)) / static_cast<double>(quiz.size());
}

bool quiz_gate(std::span<const StudyTrial> quiz) {
  return 10 * count_within(quiz) >= 7 * static_cast<long>(quiz.size());
}

bool quiz_gate(const StudySession& session) { return quiz_gate(session.quiz); }

std::vector<HumanJnd> human_jnd(std::span<const StudySession> sessions) {
  std::map<std::pair<std::string, DistortionKind>, HumanJnd> acc;
  for (const auto& s : sessions) {
    for (const auto& t : s.main) {
      if (!t.position) continue;
      auto& h = acc[{t.reference, t.kind}];
      h.reference = t.reference;
      h.kind = t.kind;
      h.positions[s.participant] = *t.position;
    }
  }
  std::vector<HumanJnd> out;
  for (auto& [key, h] : acc) {
    double sum = 0.0;
    for (const auto& [participant, p] : h.positions) sum += p;
    h.mean = sum / static_cast<double>(h.positions.size());
    out.push_back(std::move(h));
  }
  return out;
}

StudyService::StudyService(const Manifest& manifest, Journal& journal)
    : manifest_(manifest), journal_(journal), source_(manifest) {
  for (const auto& r : journal.existing()) apply(r);
}

StudySession StudyService::fresh(const std::string& id, const std::string& participant, json metadata) const {
  StudySession s;
  s.id = id;
  s.participant = participant;
  s.metadata = std::move(metadata);
  const auto fill = [this](const std::vector<StudyTrialEntry>& entries, std::vector<StudyTrial>& out) {
    for (const auto& e : entries)
      out.push_back({e.reference, e.kind, source_.ladder(e.reference, e.kind).level_count, e.lo, e.hi, {}});
  };
  fill(manifest_.study.training, s.training);
  fill(manifest_.study.quiz, s.quiz);
  fill(manifest_.study.main, s.main);
  return s;
}

void record_response(StudySession& s, int index, double position) {
  if (s.phase == StudyPhase::Complete || s.quiz_failed)
    fail(ErrorCode::IllegalTransition, "session " + s.id + " no longer accepts responses");
  auto& trials = s.trials(s.phase);
  if (index < 0 || index >= static_cast<int>(trials.size()))
    fail(ErrorCode::InvalidArgument, "trial index " + std::to_string(index) + " outside the " +
                                         std::string(to_string(s.phase)) + " phase");
  StudyTrial& t = trials[static_cast<std::size_t>(index)];
  if (!std::isfinite(position) || position < 0.0 || position > t.level_count)
    fail(ErrorCode::InvalidArgument, "position must lie in [0, " + std::to_string(t.level_count) + "]");
  t.position = position;
}

void advance_phase(StudySession& s) {
  switch (s.phase) {
    case StudyPhase::Training:
      s.phase = StudyPhase::Quiz;
      return;
    case StudyPhase::Quiz: {
      if (s.quiz_failed) fail(ErrorCode::IllegalTransition, "session " + s.id + " failed the quiz");
      s.quiz_score = quiz_score(s.quiz);
      if (!quiz_gate(s.quiz)) {
        s.quiz_failed = true;
        return;
      }
      s.phase = StudyPhase::Main;
      return;
    }
    case StudyPhase::Main:
      for (const auto& t : s.main)
        if (!t.position) fail(ErrorCode::IllegalTransition, "main trials remain unanswered");
      s.phase = StudyPhase::Complete;
      return;
    case StudyPhase::Complete: fail(ErrorCode::IllegalTransition, "session " + s.id + " is complete");
  }
}

void StudyService::apply(const json& r) {
  const std::string type = r.value("type", "");
  if (type == "session_created") {
    const std::string id = r.at("session").get<std::string>();
    sessions_[id] = fresh(id, r.at("participant").get<std::string>(), r.value("metadata", json::object()));
    ++next_id_;
  } else if (type == "response") {
    StudySession& s = find(r.at("session").get<std::string>());
    record_response(s, r.at("index").get<int>(), r.at("position").get<double>());
  } else if (type == "advance") {
    StudySession& s = find(r.at("session").get<std::string>());
    advance_phase(s);
  }
}

StudySession& StudyService::find(const std::string& id) {
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(ErrorCode::NotFound, "unknown session " + id);
  return it->second;
}

StudySession StudyService::create(const std::string& participant, json metadata) {
  if (participant.empty()) fail(ErrorCode::InvalidArgument, "participant id must not be empty");
  if (!metadata.is_object()) fail(ErrorCode::InvalidArgument, "metadata must be an object");
  std::lock_guard lock(mutex_);
  char id[16];
  std::snprintf(id, sizeof id, "s%04d", next_id_);
  StudySession s = fresh(id, participant, metadata);
  journal_.append("session_created", {{"session", s.id}, {"participant", participant}, {"metadata", metadata}});
  ++next_id_;
  return sessions_[s.id] = std::move(s);
}

StudySession StudyService::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(ErrorCode::NotFound, "unknown session " + id);
  return it->second;
}

StudySession StudyService::respond(const std::string& id, int index, double position) {
  std::lock_guard lock(mutex_);
  StudySession& s = find(id);
  StudySession next = s;
  record_response(next, index, position);
  journal_.append("response", {{"session", id},
                               {"phase", to_string(s.phase)},
                               {"index", index},
                               {"position", position},
                               {"reference", next.trials(next.phase)[static_cast<std::size_t>(index)].reference}});
  return s = std::move(next);
}

StudySession StudyService::advance(const std::string& id) {
  std::lock_guard lock(mutex_);
  StudySession& s = find(id);
  StudySession next = s;
  advance_phase(next);
  json body{{"session", id}, {"from", to_string(s.phase)}, {"to", to_string(next.phase)}};
  if (next.quiz_score) body["quiz_score"] = *next.quiz_score;
  if (next.quiz_failed) body["quiz_failed"] = true;
  journal_.append("advance", std::move(body));
  return s = std::move(next);
}

std::vector<StudySession> StudyService::sessions() const {
  std::lock_guard lock(mutex_);
  std::vector<StudySession> out;
  for (const auto& [id, s] : sessions_) out.push_back(s);
  return out;
}

StudyService::StimulusBytes StudyService::stimulus(const std::string& reference, DistortionKind kind, int level) {
  if (level == 0) {
    const Content c = source_.content(reference, kind, 0);
    const bool text = std::holds_alternative<std::string>(c);
    return {stored_bytes(c), text ? "text/plain; charset=utf-8" : "image/png"};
  }
  const Stimulus s = source_.stimulus(reference, kind, level);
  const std::string_view ext = stored_extension(s);
  const std::string mime = ext == "jpg" || ext == "jpeg" ? "image/jpeg"
                           : ext == "txt"                ? "text/plain; charset=utf-8"
                                                         : "image/" + std::string(ext);
  return {stored_bytes(s), mime};
}

}  // namespace jndkit
