#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmif/errors.hpp"

// Generation-client abstraction: one interface, two implementations. The
// HTTP client speaks the chat-completions wire format with retries and a
// token-bucket rate limit. The stub client replays a scripted fixture file
// and makes whole runs bit-reproducible.

namespace mmif::judge {

struct Decoding {
  double temperature = 0.0;
  int max_tokens = 1024;
};

struct GenerationRequest {
  std::string system_text;
  std::string user_text;
  std::vector<std::string> attachments;  // image paths or data: URLs
  Decoding decoding;
};

/// Stable digest of a request; fixture records key off it. Attachments
/// contribute their reference string, not their bytes.
std::string request_hash(const GenerationRequest& request);

class GenerationClient {
 public:
  virtual ~GenerationClient() = default;
  virtual std::string generate(const GenerationRequest& request) = 0;
  /// Short description for run manifests ("stub:<digest>", "http:<model>").
  virtual std::string describe() const = 0;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds base_delay{1000};
  double factor = 2.0;
};

/// Runs `fn`, retrying EvalError failures with exponential backoff.
/// ConfigError and other exceptions propagate immediately. `sleeper` exists
/// so tests can observe delays instead of waiting them out.
std::string with_retries(
    const RetryPolicy& policy, const std::function<std::string()>& fn,
    const std::function<void(std::chrono::milliseconds)>& sleeper = {});

/// Token bucket over requests/minute. acquire() blocks until a token is
/// available; burst capacity equals one minute's budget.
class RateLimiter {
 public:
  explicit RateLimiter(int requests_per_minute);
  void acquire();

 private:
  double per_second_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
  std::mutex mu_;
};

/// Client configuration, loadable from a JSON file. A config with
/// "stub_fixture" makes a stub client; otherwise endpoint/model/credential
/// describe a live HTTP client.
struct ClientConfig {
  std::string endpoint;
  std::string model;
  std::string credential_env;  // name of the env var holding the API key
  int requests_per_minute = 60;
  int timeout_seconds = 60;
  RetryPolicy retry;
  std::optional<std::string> stub_fixture;
  bool strict_fixtures = false;

  static ClientConfig from_file(const std::string& path);
  static ClientConfig from_json(const nlohmann::json& j);
  static ClientConfig stub(const std::string& fixture_path, bool strict = false);

  nlohmann::json to_json() const;  // credential env *name* only, never the value
  std::string digest() const;
  bool is_stub() const { return stub_fixture.has_value(); }
};

std::shared_ptr<GenerationClient> make_client(const ClientConfig& config);

/// Deterministic scripted client. The fixture file holds an ordered record
/// list; the first record whose request hash or user-text substring matches
/// answers the request:
///   {"strict": false, "default": "",
///    "records": [{"hash": "<request_hash>", "response": "..."},
///                {"match": "<substring of user_text>", "response": "..."}]}
/// With no match: strict mode raises FixtureMissError (the message carries
/// the request hash for pinning), lenient mode returns "default".
class StubClient : public GenerationClient {
 public:
  StubClient();
  explicit StubClient(const nlohmann::json& fixture);
  static std::shared_ptr<StubClient> from_file(const std::string& path);

  std::string generate(const GenerationRequest& request) override;
  std::string describe() const override;

  std::size_t calls() const;
  std::vector<GenerationRequest> log() const;
  void set_strict(bool strict) { strict_ = strict; }

 private:
  struct Record {
    std::optional<std::string> hash;
    std::optional<std::string> match;
    std::string response;
  };
  std::vector<Record> records_;
  bool strict_ = false;
  std::string default_response_;
  std::string digest_;
  mutable std::mutex mu_;
  std::vector<GenerationRequest> log_;
};

/// Live chat-completions client. POSTs to `<endpoint>/chat/completions`
/// with the request rendered as system + user messages; image attachments
/// ride along as base64 data URLs. Transient failures (transport, 429, 5xx)
/// are retried per the policy; the credential is resolved at call time so a
/// misconfigured client only fails when actually used.
class HttpClient : public GenerationClient {
 public:
  explicit HttpClient(ClientConfig config);
  std::string generate(const GenerationRequest& request) override;
  std::string describe() const override;

 private:
  std::string post_once(const nlohmann::json& body, const std::string& credential);
  ClientConfig config_;
  RateLimiter limiter_;
};

/// Renders an attachment reference into a data URL (reads and base64-encodes
/// file paths; passes data: URLs through). Throws EvalError when the path
/// cannot be read.
std::string resolve_attachment(const std::string& reference);

std::string base64_encode(std::string_view bytes);

}  // namespace mmif::judge
