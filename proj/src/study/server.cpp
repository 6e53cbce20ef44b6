#include <httplib.h>

#include <cmath>

#include "jndkit/errors.hpp"
#include "jndkit/study.hpp"

namespace jndkit {

using nlohmann::json;

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
    case ErrorCode::LevelOutOfRange: return 404;
    case ErrorCode::InvalidArgument: return 400;
    case ErrorCode::IllegalTransition:
    case ErrorCode::IncompleteQuiz: return 409;
    default: return 500;
  }
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send_json(res, status, {{"error", code}, {"message", message}});
}

/// Runs a handler and maps toolkit errors onto HTTP statuses.
template <typename F>
httplib::Server::Handler guarded(F&& f) {
  return [f = std::forward<F>(f)](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, status_for(e.code()), std::string(to_string(e.code())), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "InvalidArgument", e.what());
    }
  };
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) fail(ErrorCode::InvalidArgument, "request body must be a JSON object");
  return body;
}

}  // namespace

StudyServer::StudyServer(StudyService& service, std::optional<std::filesystem::path> ui_dir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;

  s.Post("/api/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const json body = parse_body(req);
           if (!body.contains("participant") || !body.at("participant").is_string())
             fail(ErrorCode::InvalidArgument, "participant must be a string");
           const StudySession session =
               service_.create(body.at("participant").get<std::string>(), body.value("metadata", json::object()));
           send_json(res, 201, to_json(session));
         }));

  s.Get("/api/sessions/:id", guarded([this](const httplib::Request& req, httplib::Response& res) {
          send_json(res, 200, to_json(service_.get(req.path_params.at("id"))));
        }));

  s.Post("/api/sessions/:id/responses", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const std::string id = req.path_params.at("id");
           service_.get(id);
           const json body = parse_body(req);
           if (!body.contains("index") || !body.at("index").is_number_integer())
             fail(ErrorCode::InvalidArgument, "index must be an integer");
           if (!body.contains("position") || !body.at("position").is_number())
             fail(ErrorCode::InvalidArgument, "position must be a number");
           if (body.contains("phase")) {
             const auto phase = parse_study_phase(body.at("phase").get<std::string>());
             if (!phase) fail(ErrorCode::InvalidArgument, "unknown phase");
             if (*phase != service_.get(id).phase)
               fail(ErrorCode::IllegalTransition, "the session is not in the " + std::string(to_string(*phase)) + " phase");
           }
           send_json(res, 200,
                     to_json(service_.respond(id, body.at("index").get<int>(), body.at("position").get<double>())));
         }));

  s.Post("/api/sessions/:id/advance", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const StudySession session = service_.advance(req.path_params.at("id"));
           if (session.quiz_failed) {
             json body = to_json(session);
             body["error"] = "QuizFailed";
             send_json(res, 409, body);
             return;
           }
           send_json(res, 200, to_json(session));
         }));

  s.Get("/api/stimuli/:reference/:kind/:level", guarded([this](const httplib::Request& req, httplib::Response& res) {
          const auto kind = parse_distortion_kind(req.path_params.at("kind"));
          if (!kind) fail(ErrorCode::NotFound, "unknown kind " + req.path_params.at("kind"));
          const std::string& level_text = req.path_params.at("level");
          if (level_text.empty() || level_text.find_first_not_of("0123456789") != std::string::npos ||
              level_text.size() > 6)
            fail(ErrorCode::NotFound, "no level " + level_text);
          const auto bytes = service_.stimulus(req.path_params.at("reference"), *kind, std::stoi(level_text));
          res.status = 200;
          res.set_content(reinterpret_cast<const char*>(bytes.data.data()), bytes.data.size(), bytes.mime);
        }));

  s.Get("/api/human-jnd", guarded([this](const httplib::Request&, httplib::Response& res) {
          const auto sessions = service_.sessions();
          json out = json::array();
          for (const auto& h : human_jnd(sessions))
            out.push_back(
                {{"reference", h.reference}, {"kind", to_string(h.kind)}, {"mean", h.mean}, {"positions", h.positions}});
          send_json(res, 200, out);
        }));

  if (ui_dir && !s.set_mount_point("/", ui_dir->string()))
    fail(ErrorCode::MissingFile, "UI directory " + ui_dir->string() + " does not exist");
}

StudyServer::~StudyServer() { stop(); }

int StudyServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) fail(ErrorCode::Io, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) fail(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void StudyServer::listen() { server_->listen_after_bind(); }

void StudyServer::stop() {
  if (server_) server_->stop();
}

}  // namespace jndkit
