#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <semaphore>
#include <span>
#include <string>
#include <vector>

#include "jndkit/perceiver.hpp"
#include "jndkit/raster.hpp"
#include "jndkit/validator.hpp"

namespace jndkit {

std::string base64_encode(std::span<const std::uint8_t> data);
std::string data_url(const Attachment& attachment);

using Sleeper = std::function<void(std::chrono::milliseconds)>;

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::milliseconds max_backoff{32000};

  /// Wait before retry number `retry` (1-based): initial * 2^(retry-1),
  /// capped.
  std::chrono::milliseconds backoff(int retry) const;
};

/// Token bucket. rate_per_second <= 0 disables limiting.
class RateLimiter {
 public:
  RateLimiter(double rate_per_second, double burst, Sleeper sleeper = {});
  void acquire();

 private:
  double rate_;
  double burst_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
  Sleeper sleeper_;
  std::mutex mutex_;
};

/// Endpoint settings shared by the HTTP adapters. The endpoint is a base URL
/// such as "https://api.example.com" or "http://127.0.0.1:8080".
struct EndpointConfig {
  std::string endpoint;
  std::string api_key;
  std::string model;
  std::chrono::milliseconds timeout{60000};
  RetryPolicy retry;
  int max_concurrency = 4;
  double requests_per_second = 0.0;
};

/// Reads JNDKIT_ENDPOINT, JNDKIT_API_KEY and JNDKIT_MODEL, falling back to
/// the given values.
EndpointConfig endpoint_from_env(EndpointConfig base);

/// Issues a JSON POST with retries: transport failures and 5xx back off
/// exponentially, 429 waits for Retry-After when the server sends one, 413
/// raises PayloadTooLarge at once. Returns the response body.
class HttpJsonClient {
 public:
  explicit HttpJsonClient(EndpointConfig config, Sleeper sleeper = {});
  ~HttpJsonClient();
  std::string post(const std::string& path, const std::string& body);
  const EndpointConfig& config() const noexcept { return config_; }
  /// Requests actually sent over the wire, retries included.
  long attempts() const noexcept { return attempts_.load(); }

 private:
  EndpointConfig config_;
  Sleeper sleeper_;
  RateLimiter limiter_;
  std::counting_semaphore<1024> slots_;
  std::atomic<long> attempts_{0};
};

/// Chat-completions adapter: one user message holding the prompt and both
/// stimuli as base64 data URLs, anchor first, temperature 0. Text stimuli are
/// appended to the prompt instead.
class RemoteChatPerceiver final : public Perceiver {
 public:
  explicit RemoteChatPerceiver(EndpointConfig config, Sleeper sleeper = {});
  std::string describe() const override;
  /// The request document for a query, exposed for inspection.
  static std::string request_body(const std::string& model, const ComparisonQuery& query);

 protected:
  Reply do_compare(const ComparisonQuery& query) override;

 private:
  HttpJsonClient client_;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  /// Throws ProviderUnavailable when the backend cannot answer.
  virtual std::vector<double> embed(const Raster& image) = 0;
};

/// POST {endpoint}/v1/embeddings with the image as a data URL.
class HttpEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(EndpointConfig config, Sleeper sleeper = {});
  std::vector<double> embed(const Raster& image) override;

 private:
  HttpJsonClient client_;
};

/// dot(a, b) / (|a| |b|). Throws ZeroVector for a null vector and
/// DimensionMismatch for unequal lengths.
double cosine_similarity(std::span<const double> a, std::span<const double> b);
double perception_correlation(EmbeddingProvider& provider, const Raster& reference, const Raster& distorted);

/// POST {endpoint}/v1/nli {"premise", "hypothesis"} returning entailment,
/// neutral and contradiction probabilities. Any failure is reported as
/// CheckerUnavailable.
class HttpNliChecker final : public ContradictionChecker {
 public:
  explicit HttpNliChecker(EndpointConfig config, Sleeper sleeper = {});
  NliScores infer(std::string_view premise, std::string_view hypothesis) override;

 private:
  HttpJsonClient client_;
};

}  // namespace jndkit
