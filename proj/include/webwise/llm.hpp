#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

#include "httplib.h"
#include "json.hpp"

#include "webwise/error.hpp"
#include "webwise/program.hpp"
#include "webwise/prompt.hpp"

namespace webwise {

/// Identifies one completion request within a run. Only the scripted backend
/// looks at it.
struct CompletionKey {
  std::string task_id;
  std::uint64_t seed = 0;
  int step_index = 0;
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual GeneratedText complete(const PromptBundle& bundle, const CompletionKey& key) = 0;
};

/// Refuses bundles over the input budget before the backend is contacted.
inline GeneratedText complete(const PromptBundle& bundle, const LlmConfig& cfg, LlmBackend& backend,
                              const CompletionKey& key) {
  auto estimate = estimate_tokens(bundle);
  if (estimate > cfg.max_tokens) {
    throw Error(Errc::token_limit_exceeded, "prompt estimate " + std::to_string(estimate) +
                                                " tokens exceeds limit " + std::to_string(cfg.max_tokens));
  }
  return backend.complete(bundle, key);
}

// --- scripted -----------------------------------------------------------------

struct ScriptRecord {
  std::string task_id;
  std::optional<std::uint64_t> seed;
  int step_index = 0;
  std::string response_text;
};

inline std::string to_jsonl_line(const ScriptRecord& r) {
  nlohmann::ordered_json j;
  j["task_id"] = r.task_id;
  if (r.seed) j["seed"] = *r.seed;
  j["step_index"] = r.step_index;
  j["response_text"] = r.response_text;
  return j.dump();
}

inline std::vector<ScriptRecord> load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config_error, "cannot open fixture file: " + path);
  std::vector<ScriptRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      ScriptRecord r;
      r.task_id = j.at("task_id").get<std::string>();
      r.step_index = j.at("step_index").get<int>();
      r.response_text = j.at("response_text").get<std::string>();
      if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::uint64_t>();
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::config_error, path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

/// Replays responses from a JSON-lines fixture keyed by (task_id, step_index),
/// optionally narrowed to one seed. Seed-specific records win over generic ones.
class ScriptedBackend : public LlmBackend {
 public:
  ScriptedBackend() = default;

  explicit ScriptedBackend(const std::vector<ScriptRecord>& records) {
    for (const auto& r : records) add(r);
  }

  void add(const ScriptRecord& r) { table_[{r.task_id, r.seed, r.step_index}] = r.response_text; }

  GeneratedText complete(const PromptBundle&, const CompletionKey& key) override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    if (auto it = table_.find({key.task_id, key.seed, key.step_index}); it != table_.end()) {
      return {it->second};
    }
    if (auto it = table_.find({key.task_id, std::nullopt, key.step_index}); it != table_.end()) {
      return {it->second};
    }
    throw Error(Errc::script_miss, "no scripted response for task_id=" + key.task_id +
                                       " seed=" + std::to_string(key.seed) +
                                       " step_index=" + std::to_string(key.step_index));
  }

  [[nodiscard]] std::size_t calls() const { return calls_.load(); }
  [[nodiscard]] std::size_t size() const { return table_.size(); }

 private:
  std::map<std::tuple<std::string, std::optional<std::uint64_t>, int>, std::string> table_;
  std::atomic<std::size_t> calls_{0};
};

/// Adapts any callable; handy for programmatic policies.
class CallbackBackend : public LlmBackend {
 public:
  using Fn = std::function<std::string(const PromptBundle&, const CompletionKey&)>;
  explicit CallbackBackend(Fn fn) : fn_(std::move(fn)) {}

  GeneratedText complete(const PromptBundle& bundle, const CompletionKey& key) override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return {fn_(bundle, key)};
  }
  [[nodiscard]] std::size_t calls() const { return calls_.load(); }

 private:
  Fn fn_;
  std::atomic<std::size_t> calls_{0};
};

// --- remote (OpenAI-compatible chat completions) --------------------------------------

struct HttpRequest {
  std::string path;
  std::string body;
  std::map<std::string, std::string> headers;
};

// status 0 means the request never got an HTTP response.
struct HttpResponse {
  int status = 0;
  std::string body;
  std::string error;
};

using HttpTransport = std::function<HttpResponse(const HttpRequest&)>;

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  std::function<void(std::chrono::milliseconds)> sleep = [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };
};

inline constexpr const char* kApiKeyEnv = "WEBWISE_API_KEY";

inline std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
  auto scheme_end = base_url.find("://");
  auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  auto path_start = base_url.find('/', host_start);
  std::string origin = path_start == std::string::npos ? base_url : base_url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  std::string path = prefix.size() >= 3 && prefix.compare(prefix.size() - 3, 3, "/v1") == 0
                         ? prefix + "/chat/completions"
                         : prefix + "/v1/chat/completions";
  return {origin, path};
}

inline std::string chat_request_body(const PromptBundle& bundle, const LlmConfig& cfg) {
  nlohmann::ordered_json body;
  body["model"] = cfg.model_name;
  body["temperature"] = cfg.temperature;
  auto messages = nlohmann::ordered_json::array();
  for (const auto& m : bundle.messages) {
    messages.push_back({{"role", role_name(m.role)}, {"content", m.content}});
  }
  body["messages"] = std::move(messages);
  return body.dump();
}

inline HttpTransport httplib_transport(const std::string& origin) {
  return [origin](const HttpRequest& req) {
    HttpResponse out;
    try {
      httplib::Client client(origin);
      client.set_connection_timeout(10);
      client.set_read_timeout(120);
      httplib::Headers headers;
      for (const auto& [k, v] : req.headers) {
        if (k != "Content-Type") headers.emplace(k, v);
      }
      auto res = client.Post(req.path, headers, req.body, "application/json");
      if (!res) {
        out.error = httplib::to_string(res.error());
        return out;
      }
      out.status = res->status;
      out.body = res->body;
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    return out;
  };
}

class RemoteBackend : public LlmBackend {
 public:
  RemoteBackend(LlmConfig cfg, std::string api_key, HttpTransport transport = {}, RetryPolicy retry = {})
      : cfg_(std::move(cfg)), api_key_(std::move(api_key)), retry_(std::move(retry)) {
    auto [origin, path] = split_base_url(cfg_.base_url);
    path_ = path;
    transport_ = transport ? std::move(transport) : httplib_transport(origin);
  }

  static RemoteBackend from_environment(const LlmConfig& cfg) {
    const char* key = std::getenv(kApiKeyEnv);
    return RemoteBackend(cfg, key ? key : "");
  }

  GeneratedText complete(const PromptBundle& bundle, const CompletionKey&) override {
    HttpRequest req;
    req.path = path_;
    req.body = chat_request_body(bundle, cfg_);
    req.headers["Content-Type"] = "application/json";
    if (!api_key_.empty()) req.headers["Authorization"] = "Bearer " + api_key_;

    auto backoff = retry_.initial_backoff;
    std::string last_error;
    for (int attempt = 1; attempt <= retry_.attempts; ++attempt) {
      auto res = transport_(req);
      if (res.status == 200) return {parse_content(res.body)};
      bool transient = res.status == 0 || res.status == 429 || res.status >= 500;
      last_error = res.status == 0 ? "transport failure: " + res.error
                                   : "HTTP " + std::to_string(res.status) + ": " + res.body.substr(0, 200);
      if (!transient) break;
      if (attempt < retry_.attempts) {
        retry_.sleep(backoff);
        backoff *= 2;
      }
    }
    throw Error(Errc::transport_error, last_error);
  }

  [[nodiscard]] const std::string& path() const { return path_; }

 private:
  static std::string parse_content(const std::string& body) {
    try {
      auto j = nlohmann::json::parse(body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::transport_error, std::string("malformed completion response: ") + e.what());
    }
  }

  LlmConfig cfg_;
  std::string api_key_;
  RetryPolicy retry_;
  std::string path_;
  HttpTransport transport_;
};

}  // namespace webwise
