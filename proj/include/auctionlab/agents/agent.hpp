#pragma once

// Bidder decision layer. ScriptedAgent wraps the deterministic strategies;
// LLMAgent renders stage prompts, calls the gateway, parses replies, and
// re-elicits with a corrective sentence on parse failure. After the retry
// budget, the most conservative legal action is substituted and flagged.

#include <memory>
#include <optional>
#include <string>

#include "auctionlab/agents/parsing.hpp"
#include "auctionlab/agents/prompts.hpp"
#include "auctionlab/agents/scripted.hpp"
#include "auctionlab/config.hpp"
#include "auctionlab/gateway.hpp"
#include "auctionlab/mechanisms/clock.hpp"

namespace auctionlab {

struct SealedDecision {
  Money bid{0};
  double raw_bid = 0.0;
  bool corrected = false;   // raw was off-grid
  int parse_retries = 0;
  bool fallback = false;    // elicitation failed; zero bid substituted
};

struct ClockDecisionResult {
  ClockDecision decision = ClockDecision::Exit;
  std::string plan;
  std::string reflection;
  int parse_retries = 0;
  bool fallback = false;    // elicitation failed; exit substituted
};

struct EbayDecisionResult {
  bool hold = true;
  Money amount{0};
  double raw_amount = 0.0;
  bool corrected = false;
  std::string plan;
  int parse_retries = 0;
  bool fallback = false;    // elicitation failed; hold substituted
};

/// Per-stage observation for the eBay day loop; carries only public state
/// plus the bidder's own private information.
struct EbayObservation {
  Money value{0};
  int total_periods = 10;
  int current_period = 1;
  int horizon = 10;  // live final day (grows under the closing rule)
  std::string ordering_line;
  std::string previous_bids = "None";
  std::string transcript = "None";
  Money current_price{0};
  std::optional<Money> last_bid;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual bool is_llm() const { return false; }

  /// Plan elicitation; round 0 uses the fresh prompt, later rounds fold in
  /// history and the previous reflection. Scripted agents return "".
  virtual std::string plan(int round, const std::string& history,
                           const std::string& reflection) {
    (void)round;
    (void)history;
    (void)reflection;
    return {};
  }

  virtual SealedDecision sealed_bid(Money value, const std::string& plan_text) = 0;

  virtual std::string reflect(const std::string& history) {
    (void)history;
    return {};
  }

  virtual ClockDecisionResult clock_decide(Money value, Money current_price,
                                           const std::string& transcript) = 0;

  virtual EbayDecisionResult ebay_decide(const EbayObservation& obs) = 0;
};

class ScriptedAgent : public Agent {
 public:
  ScriptedAgent(AgentSpec spec, const ExperimentConfig& cfg, RngStream rng)
      : spec_(spec), cfg_(cfg), rng_(std::move(rng)) {}

  SealedDecision sealed_bid(Money value, const std::string&) override {
    SealedDecision d;
    d.bid = scripted_sealed_bid(spec_, value, cfg_, rng_);
    d.raw_bid = static_cast<double>(d.bid.units);
    return d;
  }

  ClockDecisionResult clock_decide(Money value, Money current_price,
                                   const std::string&) override {
    ClockDecisionResult r;
    r.decision = scripted_clock_decision(spec_, value, current_price, rng_);
    return r;
  }

  EbayDecisionResult ebay_decide(const EbayObservation& obs) override {
    const auto a = scripted_ebay_decision(spec_, obs.value, obs.current_period, obs.horizon,
                                          obs.last_bid, cfg_, rng_);
    EbayDecisionResult r;
    r.hold = a.hold;
    r.amount = a.amount;
    r.raw_amount = static_cast<double>(a.amount.units);
    return r;
  }

 private:
  AgentSpec spec_;
  const ExperimentConfig& cfg_;
  RngStream rng_;
};

class LLMAgent : public Agent {
 public:
  LLMAgent(const ExperimentConfig& cfg, int bidder_index, Gateway& gateway,
           int max_parse_retries = 2)
      : cfg_(cfg), bidder_(bidder_index), gateway_(gateway),
        max_parse_retries_(max_parse_retries) {}

  bool is_llm() const override { return true; }

  /// Call-site label folded into replay cache-miss errors.
  void set_context(const std::string& ctx) { context_ = ctx; }

  std::string plan(int round, const std::string& history,
                   const std::string& reflection) override {
    const std::string prompt =
        round == 0 ? prompts::render_plan_prompt(cfg_, bidder_)
                   : prompts::render_plan_prompt(cfg_, bidder_, history, reflection);
    return ask(prompt, "plan");
  }

  SealedDecision sealed_bid(Money value, const std::string& plan_text) override {
    const Money low{0};
    const Money high = cfg_.environment.value_high();
    std::string prompt = prompts::render_bid_prompt(cfg_, bidder_, value, plan_text);
    SealedDecision d;
    for (int attempt = 0; attempt <= max_parse_retries_; ++attempt) {
      const std::string reply = ask(prompt, "bid");
      const auto parsed = parse_scalar_bid(reply, low, high, cfg_.off_grid_policy);
      if (parsed.ok()) {
        d.bid = parsed.value->bid;
        d.raw_bid = parsed.value->raw;
        d.corrected = parsed.value->corrected;
        d.parse_retries = attempt;
        return d;
      }
      prompt += "\n\nYour previous response was invalid: " + parsed.message +
                ". Reply with a single whole number between " + std::to_string(low.units) +
                " and " + std::to_string(high.units) + " and no other text.";
    }
    // Conservative fallback: abstain as a zero bid, flagged for analysis.
    d.bid = Money{0};
    d.parse_retries = max_parse_retries_;
    d.fallback = true;
    return d;
  }

  std::string reflect(const std::string& history) override {
    return ask(prompts::render_reflect_prompt(cfg_, bidder_, history), "reflect");
  }

  ClockDecisionResult clock_decide(Money value, Money current_price,
                                   const std::string& transcript) override {
    std::string prompt =
        prompts::render_clock_prompt(cfg_, bidder_, value, current_price, transcript);
    ClockDecisionResult r;
    for (int attempt = 0; attempt <= max_parse_retries_; ++attempt) {
      const std::string reply = ask(prompt, "clock_decision");
      const auto parsed = parse_clock_action(reply);
      if (parsed.ok()) {
        r.decision = parsed.value->decision;
        r.plan = parsed.value->plan;
        r.reflection = parsed.value->reflection;
        r.parse_retries = attempt;
        return r;
      }
      prompt += "\n\nYour previous response was invalid: " + parsed.message +
                ". Use the EXACT tags, with <ACTION> Yes or No </ACTION>.";
    }
    r.decision = ClockDecision::Exit;
    r.parse_retries = max_parse_retries_;
    r.fallback = true;
    return r;
  }

  EbayDecisionResult ebay_decide(const EbayObservation& obs) override {
    const Money low{0};
    const Money high = cfg_.environment.value_high();
    std::string prompt = prompts::render_ebay_prompt(
        cfg_, bidder_, obs.value, obs.total_periods, obs.current_period, obs.ordering_line,
        obs.previous_bids, obs.transcript, obs.current_price, obs.last_bid);
    EbayDecisionResult r;
    for (int attempt = 0; attempt <= max_parse_retries_; ++attempt) {
      const std::string reply = ask(prompt, "ebay_decision");
      const auto parsed = parse_ebay_action(reply, low, high, obs.last_bid, cfg_.off_grid_policy);
      if (parsed.ok()) {
        r.hold = parsed.value->hold;
        r.amount = parsed.value->amount;
        r.raw_amount = parsed.value->raw_amount;
        r.corrected = parsed.value->corrected;
        r.plan = parsed.value->plan;
        r.parse_retries = attempt;
        return r;
      }
      prompt += "\n\nYour previous response was invalid: " + parsed.message +
                ". Use the EXACT tags with <ACTION> BID or HOLD </ACTION> and a valid <AMOUNT>.";
    }
    r.hold = true;
    r.parse_retries = max_parse_retries_;
    r.fallback = true;
    return r;
  }

 private:
  std::string ask(const std::string& prompt, const std::string& stage) {
    CompletionRequest req;
    req.model = cfg_.model_name;
    req.temperature = cfg_.temperature;
    req.messages = {{"user", prompt}};
    const std::string ctx =
        context_.empty() ? stage : context_ + " " + stage + " bidder " + std::to_string(bidder_);
    return gateway_.cached_complete(req, ctx).response_text;
  }

  const ExperimentConfig& cfg_;
  int bidder_;
  Gateway& gateway_;
  int max_parse_retries_;
  std::string context_;
};

/// Builds the agent roster for one experiment. `rng_root` provides each
/// Random agent its own named stream so retries elsewhere cannot shift it.
inline std::vector<std::unique_ptr<Agent>> make_agents(const ExperimentConfig& cfg,
                                                       Gateway* gateway, RngRoot& rng_root,
                                                       int max_parse_retries = 2) {
  std::vector<std::unique_ptr<Agent>> agents;
  for (int i = 0; i < cfg.num_bidders; ++i) {
    const AgentSpec& spec = cfg.agent_specs[i];
    if (spec.kind == AgentSpec::Kind::LLM) {
      if (!gateway) throw std::invalid_argument("make_agents: llm agent without a gateway");
      agents.push_back(std::make_unique<LLMAgent>(cfg, i, *gateway, max_parse_retries));
    } else {
      agents.push_back(
          std::make_unique<ScriptedAgent>(spec, cfg, rng_root.stream("agent_random", i)));
    }
  }
  return agents;
}

}  // namespace auctionlab
