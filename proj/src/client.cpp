#include "mmif/client.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "mmif/hash.hpp"

namespace mmif::judge {

std::string request_hash(const GenerationRequest& request) {
  nlohmann::json canonical{{"system", request.system_text},
                           {"user", request.user_text},
                           {"attachments", request.attachments},
                           {"temperature", request.decoding.temperature},
                           {"max_tokens", request.decoding.max_tokens}};
  return fnv1a64_hex(canonical.dump());
}

std::string with_retries(const RetryPolicy& policy,
                         const std::function<std::string()>& fn,
                         const std::function<void(std::chrono::milliseconds)>& sleeper) {
  auto sleep = sleeper ? sleeper : [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };
  int attempts = std::max(1, policy.max_attempts);
  std::chrono::milliseconds delay = policy.base_delay;
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const EvalError&) {
      if (attempt >= attempts) throw;
      sleep(delay);
      delay = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(delay.count()) * policy.factor));
    }
  }
}

RateLimiter::RateLimiter(int requests_per_minute)
    : per_second_(std::max(1, requests_per_minute) / 60.0),
      tokens_(static_cast<double>(std::max(1, requests_per_minute))),
      last_(std::chrono::steady_clock::now()) {}

void RateLimiter::acquire() {
  std::unique_lock<std::mutex> lock(mu_);
  for (;;) {
    auto now = std::chrono::steady_clock::now();
    double elapsed = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(tokens_ + elapsed * per_second_,
                       per_second_ * 60.0);  // burst = one minute's budget
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    double wait = (1.0 - tokens_) / per_second_;
    lock.unlock();
    std::this_thread::sleep_for(std::chrono::duration<double>(wait));
    lock.lock();
  }
}

// ---- config -----------------------------------------------------------------

ClientConfig ClientConfig::from_json(const nlohmann::json& j) {
  ClientConfig c;
  c.endpoint = j.value("endpoint", "");
  c.model = j.value("model", "");
  c.credential_env = j.value("credential_env", "");
  c.requests_per_minute = j.value("requests_per_minute", 60);
  c.timeout_seconds = j.value("timeout_seconds", 60);
  if (j.contains("retry")) {
    const auto& r = j.at("retry");
    c.retry.max_attempts = r.value("max_attempts", 5);
    c.retry.base_delay = std::chrono::milliseconds(r.value("base_ms", 1000));
    c.retry.factor = r.value("factor", 2.0);
  }
  if (j.contains("stub_fixture")) {
    c.stub_fixture = j.at("stub_fixture").get<std::string>();
  }
  c.strict_fixtures = j.value("strict_fixtures", false);
  if (!c.is_stub() && c.endpoint.empty()) {
    throw ConfigError("client config needs either an endpoint or a stub_fixture");
  }
  return c;
}

ClientConfig ClientConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open client config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid client config JSON in " + path + ": " + e.what());
  }
  return from_json(j);
}

ClientConfig ClientConfig::stub(const std::string& fixture_path, bool strict) {
  ClientConfig c;
  c.stub_fixture = fixture_path;
  c.strict_fixtures = strict;
  return c;
}

nlohmann::json ClientConfig::to_json() const {
  nlohmann::json j{{"endpoint", endpoint},
                   {"model", model},
                   {"credential_env", credential_env},
                   {"requests_per_minute", requests_per_minute},
                   {"timeout_seconds", timeout_seconds},
                   {"retry",
                    {{"max_attempts", retry.max_attempts},
                     {"base_ms", retry.base_delay.count()},
                     {"factor", retry.factor}}},
                   {"strict_fixtures", strict_fixtures}};
  if (stub_fixture) j["stub_fixture"] = *stub_fixture;
  return j;
}

std::string ClientConfig::digest() const { return fnv1a64_hex(to_json().dump()); }

std::shared_ptr<GenerationClient> make_client(const ClientConfig& config) {
  if (config.is_stub()) {
    auto stub = StubClient::from_file(*config.stub_fixture);
    if (config.strict_fixtures) stub->set_strict(true);
    return stub;
  }
  return std::make_shared<HttpClient>(config);
}

// ---- stub client --------------------------------------------------------------

StubClient::StubClient() : digest_(fnv1a64_hex("empty")) {}

StubClient::StubClient(const nlohmann::json& fixture) {
  const nlohmann::json* records = &fixture;
  if (fixture.is_object()) {
    strict_ = fixture.value("strict", false);
    default_response_ = fixture.value("default", "");
    if (fixture.contains("records")) records = &fixture.at("records");
  }
  if (records->is_array()) {
    for (const auto& r : *records) {
      Record record;
      if (r.contains("hash")) record.hash = r.at("hash").get<std::string>();
      if (r.contains("match")) record.match = r.at("match").get<std::string>();
      record.response = r.value("response", "");
      records_.push_back(std::move(record));
    }
  }
  digest_ = fnv1a64_hex(fixture.dump());
}

std::shared_ptr<StubClient> StubClient::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stub fixture: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid stub fixture JSON in " + path + ": " + e.what());
  }
  return std::make_shared<StubClient>(j);
}

std::string StubClient::generate(const GenerationRequest& request) {
  std::string hash = request_hash(request);
  {
    std::lock_guard<std::mutex> lock(mu_);
    log_.push_back(request);
  }
  for (const auto& r : records_) {
    if (r.hash && *r.hash == hash) return r.response;
    if (r.match && request.user_text.find(*r.match) != std::string::npos) {
      return r.response;
    }
  }
  if (strict_) {
    throw FixtureMissError("no fixture record matches request hash " + hash +
                           " (user text begins: " +
                           request.user_text.substr(0, 60) + ")");
  }
  return default_response_;
}

std::string StubClient::describe() const { return "stub:" + digest_; }

std::size_t StubClient::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_.size();
}

std::vector<GenerationRequest> StubClient::log() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

// ---- attachments ---------------------------------------------------------------

std::string base64_encode(std::string_view bytes) {
  static const char* alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  while (i + 3 <= bytes.size()) {
    std::uint32_t n = (static_cast<unsigned char>(bytes[i]) << 16) |
                      (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                      static_cast<unsigned char>(bytes[i + 2]);
    out += alphabet[(n >> 18) & 63];
    out += alphabet[(n >> 12) & 63];
    out += alphabet[(n >> 6) & 63];
    out += alphabet[n & 63];
    i += 3;
  }
  std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    std::uint32_t n = static_cast<unsigned char>(bytes[i]) << 16;
    out += alphabet[(n >> 18) & 63];
    out += alphabet[(n >> 12) & 63];
    out += "==";
  } else if (rest == 2) {
    std::uint32_t n = (static_cast<unsigned char>(bytes[i]) << 16) |
                      (static_cast<unsigned char>(bytes[i + 1]) << 8);
    out += alphabet[(n >> 18) & 63];
    out += alphabet[(n >> 12) & 63];
    out += alphabet[(n >> 6) & 63];
    out += '=';
  }
  return out;
}

namespace {

std::string mime_for(const std::string& path) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == "png") return "image/png";
  if (ext == "gif") return "image/gif";
  if (ext == "webp") return "image/webp";
  return "image/jpeg";
}

}  // namespace

std::string resolve_attachment(const std::string& reference) {
  if (reference.rfind("data:", 0) == 0) return reference;
  std::ifstream in(reference, std::ios::binary);
  if (!in) throw EvalError("unresolvable attachment: " + reference);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return "data:" + mime_for(reference) + ";base64," + base64_encode(bytes.str());
}

// ---- http client ----------------------------------------------------------------

namespace {

struct ParsedEndpoint {
  std::string scheme_host_port;  // "http://host:1234"
  std::string base_path;         // "/v1"
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint must include a scheme: " + endpoint);
  }
  auto path_begin = endpoint.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {endpoint, ""};
  std::string base = endpoint.substr(path_begin);
  while (!base.empty() && base.back() == '/') base.pop_back();
  return {endpoint.substr(0, path_begin), base};
}

}  // namespace

HttpClient::HttpClient(ClientConfig config)
    : config_(std::move(config)), limiter_(config_.requests_per_minute) {
  parse_endpoint(config_.endpoint);  // fail fast on malformed URLs
}

std::string HttpClient::describe() const {
  return "http:" + config_.model + "@" + config_.endpoint;
}

std::string HttpClient::post_once(const nlohmann::json& body,
                                  const std::string& credential) {
  ParsedEndpoint ep = parse_endpoint(config_.endpoint);
  httplib::Client client(ep.scheme_host_port);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!credential.empty()) {
    headers.emplace("Authorization", "Bearer " + credential);
  }
  auto res = client.Post(ep.base_path + "/chat/completions", headers,
                         body.dump(), "application/json");
  if (!res) {
    throw EvalError("transport failure talking to " + config_.endpoint + ": " +
                    httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw EvalError("retryable HTTP status " + std::to_string(res->status) +
                    " from " + config_.endpoint);
  }
  if (res->status != 200) {
    throw ConfigError("HTTP status " + std::to_string(res->status) + " from " +
                      config_.endpoint + ": " + res->body.substr(0, 200));
  }
  try {
    nlohmann::json reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw EvalError(std::string("malformed completion response: ") + e.what());
  }
}

std::string HttpClient::generate(const GenerationRequest& request) {
  std::string credential;
  if (!config_.credential_env.empty()) {
    const char* value = std::getenv(config_.credential_env.c_str());
    if (value == nullptr || *value == '\0') {
      throw ConfigError("credential environment variable is not set: " +
                        config_.credential_env);
    }
    credential = value;
  }

  // Resolve attachments up front: retrying cannot fix a missing file.
  nlohmann::json user_content;
  if (request.attachments.empty()) {
    user_content = request.user_text;
  } else {
    user_content = nlohmann::json::array();
    user_content.push_back({{"type", "text"}, {"text", request.user_text}});
    for (const auto& a : request.attachments) {
      user_content.push_back(
          {{"type", "image_url"}, {"image_url", {{"url", resolve_attachment(a)}}}});
    }
  }
  nlohmann::json messages = nlohmann::json::array();
  if (!request.system_text.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system_text}});
  }
  messages.push_back({{"role", "user"}, {"content", user_content}});
  nlohmann::json body{{"model", config_.model},
                      {"temperature", request.decoding.temperature},
                      {"max_tokens", request.decoding.max_tokens},
                      {"messages", messages}};

  return with_retries(config_.retry, [&]() {
    limiter_.acquire();
    return post_once(body, credential);
  });
}

}  // namespace mmif::judge
