#pragma once

// Chat-completion client with retries, a record/replay cache, and cost
// accounting. Replay mode never touches the network; record mode appends
// every response to a JSON Lines cache keyed by a canonical request hash.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "auctionlab/rng.hpp"

namespace auctionlab {

struct ChatMessage {
  std::string role;
  std::string content;
};

struct CompletionRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.5;
  std::optional<int> max_tokens;

  /// Canonical serialization: nlohmann objects sort keys, so the dump is
  /// stable regardless of insertion order. Timestamps never enter.
  nlohmann::json canonical() const {
    nlohmann::json j;
    j["model"] = model;
    j["temperature"] = temperature;
    if (max_tokens) j["max_tokens"] = *max_tokens;
    nlohmann::json msgs = nlohmann::json::array();
    for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
    j["messages"] = msgs;
    return j;
  }

  std::string request_hash() const {
    const std::string s = canonical().dump();
    const std::uint64_t h = fnv1a64(s);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

struct TokenUsage {
  long prompt_tokens = 0;
  long completion_tokens = 0;
};

struct CompletionRecord {
  std::string request_hash;
  std::string response_text;
  TokenUsage usage;
  double latency_seconds = 0.0;
  int attempts = 1;
  double cost = 0.0;
};

inline nlohmann::json to_json(const CompletionRecord& r) {
  return {{"request_hash", r.request_hash},
          {"response_text", r.response_text},
          {"prompt_tokens", r.usage.prompt_tokens},
          {"completion_tokens", r.usage.completion_tokens},
          {"latency_seconds", r.latency_seconds},
          {"attempts", r.attempts},
          {"cost", r.cost}};
}

inline CompletionRecord completion_record_from_json(const nlohmann::json& j) {
  CompletionRecord r;
  r.request_hash = j.at("request_hash").get<std::string>();
  r.response_text = j.at("response_text").get<std::string>();
  r.usage.prompt_tokens = j.at("prompt_tokens").get<long>();
  r.usage.completion_tokens = j.at("completion_tokens").get<long>();
  r.latency_seconds = j.at("latency_seconds").get<double>();
  r.attempts = j.at("attempts").get<int>();
  r.cost = j.at("cost").get<double>();
  return r;
}

/// Dollars per token, supplied by configuration.
struct PricingTable {
  double prompt_per_token = 0.0;
  double completion_per_token = 0.0;
};

enum class GatewayMode { Live, Record, Replay };

struct GatewayError : std::runtime_error {
  enum class Kind { Auth, RetriesExhausted, MalformedResponse, CacheMiss, Config };
  Kind kind;
  GatewayError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// Running cost ledger for one experiment.
struct BudgetLedger {
  double total_cost = 0.0;
  long total_prompt_tokens = 0;
  long total_completion_tokens = 0;
  long total_calls = 0;

  void add(const CompletionRecord& r) {
    total_cost += r.cost;
    total_prompt_tokens += r.usage.prompt_tokens;
    total_completion_tokens += r.usage.completion_tokens;
    ++total_calls;
  }
};

/// Proceed unless the ledger plus the projected next cost would exceed the
/// limit. No limit configured means always proceed.
inline bool budget_guard(const BudgetLedger& ledger, std::optional<double> limit,
                         double projected_next = 0.0) {
  if (!limit) return true;
  return ledger.total_cost + projected_next <= *limit;
}

struct GatewayOptions {
  GatewayMode mode = GatewayMode::Replay;
  std::string cache_path;              // empty = in-memory only (live mode)
  std::string base_url;                // default: env OPENAI_BASE_URL or api.openai.com
  std::string api_key;                 // default: env OPENAI_API_KEY
  std::string org_id;                  // default: env OPENAI_ORG_ID
  std::string completions_path = "/v1/chat/completions";
  int max_retries = 5;
  int backoff_initial_ms = 500;        // tests set 0
  double backoff_multiplier = 2.0;
  PricingTable pricing;
};

class Gateway {
 public:
  explicit Gateway(GatewayOptions opt) : opt_(std::move(opt)) {
    if (opt_.base_url.empty()) {
      if (const char* e = std::getenv("OPENAI_BASE_URL")) opt_.base_url = e;
      else opt_.base_url = "https://api.openai.com";
    }
    if (opt_.api_key.empty())
      if (const char* e = std::getenv("OPENAI_API_KEY")) opt_.api_key = e;
    if (opt_.org_id.empty())
      if (const char* e = std::getenv("OPENAI_ORG_ID")) opt_.org_id = e;
    if (!opt_.cache_path.empty()) load_cache();
  }

  GatewayMode mode() const { return opt_.mode; }
  const BudgetLedger& ledger() const { return ledger_; }

  /// One network completion with retry/backoff. Not consulted in replay.
  CompletionRecord complete(const CompletionRequest& req) {
    if (opt_.api_key.empty())
      throw GatewayError(GatewayError::Kind::Config, "no API key configured");
    const auto t0 = std::chrono::steady_clock::now();
    const nlohmann::json body = req.canonical();
    const std::string payload = body.dump();

    int backoff = opt_.backoff_initial_ms;
    std::string last_error;
    for (int attempt = 1; attempt <= opt_.max_retries + 1; ++attempt) {
      httplib::Client cli(opt_.base_url);
      cli.set_connection_timeout(30);
      cli.set_read_timeout(120);
      httplib::Headers headers{{"Authorization", "Bearer " + opt_.api_key}};
      if (!opt_.org_id.empty()) headers.emplace("OpenAI-Organization", opt_.org_id);
      auto res = cli.Post(opt_.completions_path, headers, payload, "application/json");

      if (res && res->status == 401)
        throw GatewayError(GatewayError::Kind::Auth, "authentication failed (401)");
      if (res && res->status == 200) {
        CompletionRecord rec = parse_response(req, res->body);
        rec.attempts = attempt;
        rec.latency_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        {
          std::lock_guard<std::mutex> lk(mu_);
          ledger_.add(rec);
        }
        return rec;
      }
      // Transport failure, rate limit, or server error: back off and retry.
      if (res) last_error = "status " + std::to_string(res->status);
      else last_error = "transport error";
      if (res && res->status >= 400 && res->status < 500 && res->status != 429)
        throw GatewayError(GatewayError::Kind::MalformedResponse,
                           "endpoint rejected request: " + last_error);
      if (attempt <= opt_.max_retries && backoff > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff = static_cast<int>(backoff * opt_.backoff_multiplier);
    }
    throw GatewayError(GatewayError::Kind::RetriesExhausted,
                       "retries exhausted: " + last_error);
  }

  /// Mode-aware completion. `context` names the call site (stage, round)
  /// so replay cache misses are diagnosable.
  CompletionRecord cached_complete(const CompletionRequest& req,
                                   const std::string& context = {}) {
    const std::string hash = req.request_hash();
    if (opt_.mode == GatewayMode::Replay) {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = cache_.find(hash);
      if (it == cache_.end())
        throw GatewayError(GatewayError::Kind::CacheMiss,
                           "replay cache miss for request " + hash +
                               (context.empty() ? "" : " at " + context));
      ledger_.add(it->second);
      return it->second;
    }
    CompletionRecord rec = complete(req);
    rec.request_hash = hash;
    if (opt_.mode == GatewayMode::Record) {
      std::lock_guard<std::mutex> lk(mu_);
      cache_[hash] = rec;
      if (!opt_.cache_path.empty()) {
        std::ofstream out(opt_.cache_path, std::ios::app);
        out << to_json(rec).dump() << "\n";
      }
    }
    return rec;
  }

 private:
  void load_cache() {
    std::ifstream in(opt_.cache_path);
    if (!in) return;  // absent cache is fine for record mode
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        CompletionRecord rec = completion_record_from_json(nlohmann::json::parse(line));
        cache_[rec.request_hash] = rec;
      } catch (const nlohmann::json::exception&) {
        // Truncated trailing line from an aborted run: ignore.
        break;
      }
    }
  }

  CompletionRecord parse_response(const CompletionRequest& req, const std::string& body) const {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception&) {
      throw GatewayError(GatewayError::Kind::MalformedResponse, "response is not JSON");
    }
    CompletionRecord rec;
    rec.request_hash = req.request_hash();
    try {
      rec.response_text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw GatewayError(GatewayError::Kind::MalformedResponse,
                         "response missing choices[0].message.content");
    }
    if (j.contains("usage")) {
      rec.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0L);
      rec.usage.completion_tokens = j["usage"].value("completion_tokens", 0L);
    }
    rec.cost = rec.usage.prompt_tokens * opt_.pricing.prompt_per_token +
               rec.usage.completion_tokens * opt_.pricing.completion_per_token;
    return rec;
  }

  GatewayOptions opt_;
  std::map<std::string, CompletionRecord> cache_;
  BudgetLedger ledger_;
  std::mutex mu_;
};

}  // namespace auctionlab
