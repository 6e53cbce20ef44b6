#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jndkit/journal.hpp"
#include "jndkit/manifest.hpp"
#include "jndkit/pipeline.hpp"

namespace httplib {
class Server;
}

namespace jndkit {

enum class StudyPhase { Training, Quiz, Main, Complete };

std::string_view to_string(StudyPhase phase) noexcept;
std::optional<StudyPhase> parse_study_phase(std::string_view name) noexcept;

struct StudyTrial {
  std::string reference;
  DistortionKind kind = DistortionKind::Blur;
  int level_count = 0;
  double lo = 0.0;  ///< ground-truth range, quiz trials only
  double hi = 0.0;
  std::optional<double> position;  ///< slider level
};

struct StudySession {
  std::string id;
  std::string participant;
  StudyPhase phase = StudyPhase::Training;
  bool quiz_failed = false;
  std::optional<double> quiz_score;  ///< fraction within bounds once graded
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<StudyTrial> training;
  std::vector<StudyTrial> quiz;
  std::vector<StudyTrial> main;

  std::vector<StudyTrial>& trials(StudyPhase phase);
  const std::vector<StudyTrial>& trials(StudyPhase phase) const;
};

nlohmann::json to_json(const StudySession& session);

/// lo/1.5 <= p <= 1.5*hi, both ends inclusive.
bool within_quiz_bounds(const StudyTrial& trial);
/// Fraction of quiz positions within bounds. IncompleteQuiz when a trial is
/// unanswered or the quiz is empty.
double quiz_score(std::span<const StudyTrial> quiz);
/// Passes when at least 70% of positions fall within bounds.
bool quiz_gate(std::span<const StudyTrial> quiz);
bool quiz_gate(const StudySession& session);

/// Pure transitions used by the service. record_response targets the
/// current phase: InvalidArgument for a bad index or position,
/// IllegalTransition once the session is complete or has failed the quiz.
void record_response(StudySession& session, int index, double position);
/// Training -> Quiz -> Main -> Complete. Leaving the quiz grades it; a
/// failure marks the session failed and keeps it in the quiz for good.
/// IncompleteQuiz or IllegalTransition when the move is not allowed.
void advance_phase(StudySession& session);

struct HumanJnd {
  std::string reference;
  DistortionKind kind = DistortionKind::Blur;
  double mean = 0.0;
  /// participant -> slider level
  std::map<std::string, double> positions;
};

/// Main-phase slider positions per (reference, kind), averaged across
/// participants. A participant answering the same pair twice contributes
/// their last answer.
std::vector<HumanJnd> human_jnd(std::span<const StudySession> sessions);

/// Study logic with every mutation journaled. State is rebuilt from the
/// journal on construction.
class StudyService {
 public:
  StudyService(const Manifest& manifest, Journal& journal);

  StudySession create(const std::string& participant, nlohmann::json metadata = nlohmann::json::object());
  /// NotFound for unknown ids.
  StudySession get(const std::string& id) const;
  /// Records a slider level for trial `index` of the current phase.
  /// InvalidArgument for a bad index or position, IllegalTransition when
  /// the session no longer accepts responses.
  StudySession respond(const std::string& id, int index, double position);
  /// Training -> Quiz -> Main -> Complete. Leaving the quiz applies the
  /// gate; a failed quiz ends the session. IllegalTransition or
  /// IncompleteQuiz when the move is not allowed.
  StudySession advance(const std::string& id);
  std::vector<StudySession> sessions() const;

  struct StimulusBytes {
    Bytes data;
    std::string mime;
  };
  /// Level 0 serves the reference. NotFound or LevelOutOfRange otherwise.
  StimulusBytes stimulus(const std::string& reference, DistortionKind kind, int level);

 private:
  void apply(const nlohmann::json& record);
  StudySession& find(const std::string& id);
  StudySession fresh(const std::string& id, const std::string& participant, nlohmann::json metadata) const;

  const Manifest& manifest_;
  Journal& journal_;
  StimulusSource source_;
  mutable std::mutex mutex_;
  std::map<std::string, StudySession> sessions_;
  int next_id_ = 1;
};

/// HTTP front end for a StudyService; optionally serves a UI directory.
class StudyServer {
 public:
  explicit StudyServer(StudyService& service, std::optional<std::filesystem::path> ui_dir = std::nullopt);
  ~StudyServer();
  StudyServer(const StudyServer&) = delete;
  StudyServer& operator=(const StudyServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  StudyService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace jndkit
