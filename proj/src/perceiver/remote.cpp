#include "jndkit/remote.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <thread>

#include "jndkit/codec.hpp"
#include "jndkit/errors.hpp"

namespace jndkit {

using nlohmann::json;

namespace {

Sleeper or_default(Sleeper sleeper) {
  if (sleeper) return sleeper;
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string text_of(const Attachment& a) { return std::string(a.data.begin(), a.data.end()); }

json parse_body(const std::string& body, const char* what) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    fail(ErrorCode::PerceiverFailure, std::string("malformed ") + what + " response: " + e.what());
  }
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(), static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string data_url(const Attachment& a) { return "data:" + a.mime + ";base64," + base64_encode(a.data); }

std::chrono::milliseconds RetryPolicy::backoff(int retry) const {
  auto d = initial_backoff;
  for (int i = 1; i < retry && d < max_backoff; ++i) d *= 2;
  return std::min(d, max_backoff);
}

RateLimiter::RateLimiter(double rate_per_second, double burst, Sleeper sleeper)
    : rate_(rate_per_second),
      burst_(std::max(1.0, burst)),
      tokens_(burst_),
      last_(std::chrono::steady_clock::now()),
      sleeper_(or_default(std::move(sleeper))) {}

void RateLimiter::acquire() {
  if (rate_ <= 0.0) return;
  double wait_s = 0.0;
  {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    tokens_ = std::min(burst_, tokens_ + std::chrono::duration<double>(now - last_).count() * rate_);
    last_ = now;
    tokens_ -= 1.0;
    if (tokens_ < 0.0) wait_s = -tokens_ / rate_;
  }
  if (wait_s > 0.0) sleeper_(std::chrono::milliseconds(static_cast<long>(std::ceil(wait_s * 1000.0))));
}

EndpointConfig endpoint_from_env(EndpointConfig base) {
  if (const char* v = std::getenv("JNDKIT_ENDPOINT")) base.endpoint = v;
  if (const char* v = std::getenv("JNDKIT_API_KEY")) base.api_key = v;
  if (const char* v = std::getenv("JNDKIT_MODEL")) base.model = v;
  return base;
}

HttpJsonClient::HttpJsonClient(EndpointConfig config, Sleeper sleeper)
    : config_(std::move(config)),
      sleeper_(or_default(std::move(sleeper))),
      limiter_(config_.requests_per_second, std::max(1.0, config_.requests_per_second), sleeper_),
      slots_(std::clamp(config_.max_concurrency, 1, 1024)) {
  if (config_.endpoint.empty()) fail(ErrorCode::InvalidArgument, "endpoint not configured");
  if (config_.retry.max_attempts < 1) fail(ErrorCode::InvalidArgument, "max_attempts must be at least 1");
}

HttpJsonClient::~HttpJsonClient() = default;

std::string HttpJsonClient::post(const std::string& path, const std::string& body) {
  slots_.acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{slots_};

  httplib::Client client(config_.endpoint);
  const auto secs = [](std::chrono::milliseconds d) {
    return std::make_pair(static_cast<time_t>(d.count() / 1000), static_cast<time_t>((d.count() % 1000) * 1000));
  };
  const auto [ts, tus] = secs(config_.timeout);
  client.set_connection_timeout(ts, tus);
  client.set_read_timeout(ts, tus);
  client.set_write_timeout(ts, tus);
  if (!config_.api_key.empty()) client.set_bearer_token_auth(config_.api_key);

  std::optional<Error> last;
  long retry_after_ms = -1;
  for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
    if (attempt > 1) {
      auto wait = config_.retry.backoff(attempt - 1);
      if (last && last->code() == ErrorCode::RateLimited && retry_after_ms >= 0)
        wait = std::chrono::milliseconds(retry_after_ms);
      sleeper_(wait);
    }
    limiter_.acquire();
    attempts_.fetch_add(1);
    retry_after_ms = -1;
    auto res = client.Post(path, body, "application/json");
    if (!res) {
      last = Error(ErrorCode::Transport, config_.endpoint + path + ": " + httplib::to_string(res.error()));
      continue;
    }
    const int status = res->status;
    if (status >= 200 && status < 300) return res->body;
    if (status == 413) fail(ErrorCode::PayloadTooLarge, config_.endpoint + path + " rejected the request size");
    if (status == 429) {
      if (res->has_header("Retry-After")) {
        try {
          retry_after_ms = static_cast<long>(std::stod(res->get_header_value("Retry-After")) * 1000.0);
        } catch (const std::exception&) {
          retry_after_ms = -1;
        }
      }
      last = Error(ErrorCode::RateLimited, config_.endpoint + path + " returned 429");
      continue;
    }
    if (status >= 500) {
      last = Error(ErrorCode::Transport, config_.endpoint + path + " returned " + std::to_string(status));
      continue;
    }
    fail(ErrorCode::PerceiverFailure, config_.endpoint + path + " returned " + std::to_string(status) + ": " +
                                          res->body.substr(0, 200));
  }
  throw *last;
}

RemoteChatPerceiver::RemoteChatPerceiver(EndpointConfig config, Sleeper sleeper)
    : client_(std::move(config), std::move(sleeper)) {}

std::string RemoteChatPerceiver::describe() const {
  return "remote(" + client_.config().model + " @ " + client_.config().endpoint + ")";
}

std::string RemoteChatPerceiver::request_body(const std::string& model, const ComparisonQuery& q) {
  std::string text = q.prompt;
  json images = json::array();
  int text_index = 0;
  for (const PayloadFn* fn : {&q.anchor_payload, &q.candidate_payload}) {
    if (!*fn) continue;
    const Attachment a = (*fn)();
    if (a.mime == "text/plain") {
      text += "\n\nText " + std::to_string(++text_index) + ":\n" + text_of(a);
    } else {
      images.push_back({{"type", "image_url"}, {"image_url", {{"url", data_url(a)}}}});
    }
  }
  json content = json::array({{{"type", "text"}, {"text", text}}});
  for (auto& img : images) content.push_back(std::move(img));
  const json doc = {{"model", model},
                    {"temperature", 0},
                    {"messages", json::array({{{"role", "user"}, {"content", std::move(content)}}})}};
  return doc.dump();
}

Reply RemoteChatPerceiver::do_compare(const ComparisonQuery& q) {
  const auto start = std::chrono::steady_clock::now();
  const std::string body = client_.post("/v1/chat/completions", request_body(client_.config().model, q));
  const json doc = parse_body(body, "chat");
  Reply reply;
  try {
    const json& content = doc.at("choices").at(0).at("message").at("content");
    if (content.is_string()) {
      reply.text = content.get<std::string>();
    } else {
      for (const auto& part : content)
        if (part.value("type", "") == "text") reply.text += part.at("text").get<std::string>();
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::PerceiverFailure, std::string("chat response without message content: ") + e.what());
  }
  reply.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return reply;
}

HttpEmbeddingProvider::HttpEmbeddingProvider(EndpointConfig config, Sleeper sleeper)
    : client_(std::move(config), std::move(sleeper)) {}

std::vector<double> HttpEmbeddingProvider::embed(const Raster& image) {
  const json req = {{"model", client_.config().model}, {"input", data_url({"image/png", encode_png(image)})}};
  std::string body;
  try {
    body = client_.post("/v1/embeddings", req.dump());
  } catch (const Error& e) {
    fail(ErrorCode::ProviderUnavailable, e.what());
  }
  try {
    return json::parse(body).at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ProviderUnavailable, std::string("malformed embedding response: ") + e.what());
  }
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    fail(ErrorCode::DimensionMismatch,
         "embedding lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) fail(ErrorCode::ZeroVector, "cosine similarity of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double perception_correlation(EmbeddingProvider& provider, const Raster& reference, const Raster& distorted) {
  const auto a = provider.embed(reference);
  const auto b = provider.embed(distorted);
  return cosine_similarity(a, b);
}

HttpNliChecker::HttpNliChecker(EndpointConfig config, Sleeper sleeper) : client_(std::move(config), std::move(sleeper)) {}

NliScores HttpNliChecker::infer(std::string_view premise, std::string_view hypothesis) {
  const json req = {{"premise", premise}, {"hypothesis", hypothesis}};
  try {
    const json doc = json::parse(client_.post("/v1/nli", req.dump()));
    return {doc.at("entailment").get<double>(), doc.at("neutral").get<double>(), doc.at("contradiction").get<double>()};
  } catch (const Error& e) {
    fail(ErrorCode::CheckerUnavailable, e.what());
  } catch (const json::exception& e) {
    fail(ErrorCode::CheckerUnavailable, std::string("malformed NLI response: ") + e.what());
  }
}

}  // namespace jndkit
