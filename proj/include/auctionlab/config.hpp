#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "auctionlab/money.hpp"

namespace auctionlab {

enum class Family { FPSB, SPSB, TPSB, AllPay, AscendingClock, EbayProxy };
enum class EnvKind { IPV, APV, CV };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::FPSB: return "fpsb";
    case Family::SPSB: return "spsb";
    case Family::TPSB: return "tpsb";
    case Family::AllPay: return "all_pay";
    case Family::AscendingClock: return "ascending_clock";
    case Family::EbayProxy: return "ebay_proxy";
  }
  return "?";
}

inline std::optional<Family> family_from_string(const std::string& s) {
  if (s == "fpsb") return Family::FPSB;
  if (s == "spsb") return Family::SPSB;
  if (s == "tpsb") return Family::TPSB;
  if (s == "all_pay") return Family::AllPay;
  if (s == "ascending_clock") return Family::AscendingClock;
  if (s == "ebay_proxy") return Family::EbayProxy;
  return std::nullopt;
}

inline std::string to_string(EnvKind k) {
  switch (k) {
    case EnvKind::IPV: return "ipv";
    case EnvKind::APV: return "apv";
    case EnvKind::CV: return "cv";
  }
  return "?";
}

inline std::optional<EnvKind> env_kind_from_string(const std::string& s) {
  if (s == "ipv") return EnvKind::IPV;
  if (s == "apv") return EnvKind::APV;
  if (s == "cv") return EnvKind::CV;
  return std::nullopt;
}

struct BidderId {
  int index = 0;
  std::string display_name;
  friend bool operator==(const BidderId&, const BidderId&) = default;
};

/// Default bidder roster, extended cyclically with a numeric suffix when an
/// experiment has more bidders than stock names.
inline std::string default_bidder_name(int index) {
  static const char* kNames[] = {"Andy", "Betty", "Charles", "David",
                                 "Emma", "Frank", "Grace", "Henry"};
  constexpr int kCount = 8;
  if (index < kCount) return kNames[index];
  return std::string(kNames[index % kCount]) + std::to_string(index / kCount + 1);
}

struct MechanismSpec {
  Family family = Family::SPSB;
  bool broadcast_dropouts = true;        // AscendingClock: true = AC, false = AC-B
  std::optional<int> num_periods;        // EbayProxy
  std::optional<bool> closing_rule;      // EbayProxy
  std::optional<Money> hidden_reserve;   // EbayProxy
  Money start_price{0};
  std::optional<Money> max_price;        // clock cap
  Money increment{1};                    // grid step, in units (normally 1)
};

struct ValueEnvironment {
  EnvKind kind = EnvKind::IPV;
  Money ipv_high{99};
  Money common_low{0};
  Money common_high{20};
  Money private_high{20};
  Money noise_bound{20};

  /// Highest attainable value on the grid.
  Money value_high() const {
    switch (kind) {
      case EnvKind::IPV: return ipv_high;
      case EnvKind::APV: return common_high + private_high;
      case EnvKind::CV: return common_high + noise_bound;
    }
    return Money{0};
  }
  Money value_low() const {
    if (kind == EnvKind::CV) return common_low - noise_bound;
    return Money{0};
  }
};

/// How a bidder seat is played.
struct AgentSpec {
  enum class Kind {
    LLM,
    Truthful,
    EquilibriumRN,
    Shaded,
    NaiveCV,
    ConstantBid,
    Random,
    NeverExit,
    Sniper,
  };
  Kind kind = Kind::Truthful;
  double fraction = 0.5;     // Shaded
  Money constant_bid{0};     // ConstantBid

  std::string to_string() const;
  static std::optional<AgentSpec> parse(const std::string& s);
};

inline std::string AgentSpec::to_string() const {
  switch (kind) {
    case Kind::LLM: return "llm";
    case Kind::Truthful: return "truthful";
    case Kind::EquilibriumRN: return "equilibrium";
    case Kind::Shaded: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "shaded:%g", fraction);
      return buf;
    }
    case Kind::NaiveCV: return "naive_cv";
    case Kind::ConstantBid: return "constant:" + std::to_string(constant_bid.units);
    case Kind::Random: return "random";
    case Kind::NeverExit: return "never_exit";
    case Kind::Sniper: return "sniper";
  }
  return "?";
}

inline std::optional<AgentSpec> AgentSpec::parse(const std::string& s) {
  AgentSpec a;
  if (s == "llm") { a.kind = Kind::LLM; return a; }
  if (s == "truthful") { a.kind = Kind::Truthful; return a; }
  if (s == "equilibrium") { a.kind = Kind::EquilibriumRN; return a; }
  if (s == "naive_cv") { a.kind = Kind::NaiveCV; return a; }
  if (s == "random") { a.kind = Kind::Random; return a; }
  if (s == "never_exit") { a.kind = Kind::NeverExit; return a; }
  if (s == "sniper") { a.kind = Kind::Sniper; return a; }
  if (s.rfind("shaded:", 0) == 0) {
    a.kind = Kind::Shaded;
    try { a.fraction = std::stod(s.substr(7)); } catch (...) { return std::nullopt; }
    if (a.fraction < 0.0 || a.fraction > 1.0) return std::nullopt;
    return a;
  }
  if (s.rfind("constant:", 0) == 0) {
    a.kind = Kind::ConstantBid;
    try { a.constant_bid = Money{std::stoll(s.substr(9))}; } catch (...) { return std::nullopt; }
    return a;
  }
  return std::nullopt;
}

enum class InterventionKind { Menu, Proxy, Nash, DominantStrategy, WrongStrategy, RiskNeutral };

inline std::string to_string(InterventionKind k) {
  switch (k) {
    case InterventionKind::Menu: return "menu";
    case InterventionKind::Proxy: return "proxy";
    case InterventionKind::Nash: return "nash";
    case InterventionKind::DominantStrategy: return "dominant_strategy";
    case InterventionKind::WrongStrategy: return "wrong_strategy";
    case InterventionKind::RiskNeutral: return "risk_neutral";
  }
  return "?";
}

inline std::optional<InterventionKind> intervention_from_string(const std::string& s) {
  if (s == "menu") return InterventionKind::Menu;
  if (s == "proxy") return InterventionKind::Proxy;
  if (s == "nash") return InterventionKind::Nash;
  if (s == "dominant_strategy") return InterventionKind::DominantStrategy;
  if (s == "wrong_strategy") return InterventionKind::WrongStrategy;
  if (s == "risk_neutral") return InterventionKind::RiskNeutral;
  return std::nullopt;
}

enum class OffGridPolicy { RoundHalfUp, Strict };

struct ExperimentConfig {
  MechanismSpec mechanism;
  ValueEnvironment environment;
  int num_bidders = 3;
  int num_rounds = 0;  // 0 = take the per-environment default
  std::vector<AgentSpec> agent_specs;
  std::uint64_t rng_seed = 0;
  std::optional<InterventionKind> intervention;
  bool one_shot = false;
  bool chain_of_thought = true;
  std::string model_name = "gpt-4";
  double temperature = 0.5;
  std::string currency_symbol = "$";
  std::optional<std::string> rule_text_override;
  OffGridPolicy off_grid_policy = OffGridPolicy::RoundHalfUp;
  Rational increment_value{1};  // currency units per grid step
};

struct ValidationResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;
  bool ok() const { return config.has_value(); }
};

/// Fills defaults and checks every cross-field invariant. Returns either a
/// normalized config or the full list of violations.
inline ValidationResult validate_config(ExperimentConfig cfg) {
  std::vector<std::string> errors;
  const auto& m = cfg.mechanism;
  const bool is_ebay = m.family == Family::EbayProxy;
  const bool is_clock = m.family == Family::AscendingClock;

  if (cfg.num_bidders < 2) errors.push_back("num_bidders must be at least 2");
  if (m.family == Family::TPSB && cfg.num_bidders < 3)
    errors.push_back("tpsb requires at least 3 bidders");
  if (!cfg.agent_specs.empty() &&
      static_cast<int>(cfg.agent_specs.size()) != cfg.num_bidders)
    errors.push_back("agent_specs length must equal num_bidders");
  if (cfg.agent_specs.empty())
    errors.push_back("agent_specs missing");
  if (m.increment.units <= 0) errors.push_back("increment must be positive");
  if (cfg.increment_value.num <= 0) errors.push_back("increment_value must be positive");

  if (!is_ebay) {
    if (m.hidden_reserve) errors.push_back("reserve only valid for ebay_proxy");
    if (m.num_periods) errors.push_back("num_periods only valid for ebay_proxy");
    if (m.closing_rule) errors.push_back("closing_rule only valid for ebay_proxy");
  } else {
    if (!m.num_periods) cfg.mechanism.num_periods = 10;
    if (!m.closing_rule) cfg.mechanism.closing_rule = false;
    if (*cfg.mechanism.num_periods < 1) errors.push_back("num_periods must be positive");
  }
  if (is_clock) {
    if (!m.max_price) cfg.mechanism.max_price = cfg.environment.value_high();
    if (*cfg.mechanism.max_price < m.start_price)
      errors.push_back("max_price must be at least start_price");
  }

  const auto& e = cfg.environment;
  if (e.common_low > e.common_high) errors.push_back("common_low must not exceed common_high");
  if (e.ipv_high.units < 0 || e.private_high.units < 0 || e.noise_bound.units < 0 ||
      e.common_low.units < 0)
    errors.push_back("environment bounds must be non-negative");
  if (m.family == Family::AscendingClock && e.kind == EnvKind::CV)
    errors.push_back("ascending_clock is not defined for the cv environment");

  if (cfg.num_rounds == 0)
    cfg.num_rounds = (e.kind == EnvKind::IPV && !is_ebay && !is_clock) ? 15 : 10;
  if (cfg.one_shot) cfg.num_rounds = 1;
  if (cfg.num_rounds < 1) errors.push_back("num_rounds must be positive");
  if (cfg.temperature < 0.0) errors.push_back("temperature must be non-negative");
  if (cfg.intervention && m.family != Family::SPSB)
    errors.push_back("interventions are defined for spsb only");

  if (!errors.empty()) return {std::nullopt, errors};
  return {cfg, {}};
}

// ---- JSON (config file) serialization -------------------------------------
// Unknown keys are a hard error: the config file is the experiment's
// permanent record and silent typos would corrupt replays.

namespace detail {
inline void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                       const std::string& where, std::vector<std::string>& errors) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool found = false;
    for (const char* k : allowed)
      if (it.key() == k) { found = true; break; }
    if (!found) errors.push_back("unknown key '" + it.key() + "' in " + where);
  }
}
}  // namespace detail

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json m;
  m["family"] = to_string(c.mechanism.family);
  if (c.mechanism.family == Family::AscendingClock)
    m["broadcast_dropouts"] = c.mechanism.broadcast_dropouts;
  if (c.mechanism.num_periods) m["num_periods"] = *c.mechanism.num_periods;
  if (c.mechanism.closing_rule) m["closing_rule"] = *c.mechanism.closing_rule;
  if (c.mechanism.hidden_reserve) m["hidden_reserve"] = c.mechanism.hidden_reserve->units;
  m["start_price"] = c.mechanism.start_price.units;
  if (c.mechanism.max_price) m["max_price"] = c.mechanism.max_price->units;
  m["increment"] = c.mechanism.increment.units;

  nlohmann::json e;
  e["kind"] = to_string(c.environment.kind);
  switch (c.environment.kind) {
    case EnvKind::IPV:
      e["ipv_high"] = c.environment.ipv_high.units;
      break;
    case EnvKind::APV:
      e["common_low"] = c.environment.common_low.units;
      e["common_high"] = c.environment.common_high.units;
      e["private_high"] = c.environment.private_high.units;
      break;
    case EnvKind::CV:
      e["common_low"] = c.environment.common_low.units;
      e["common_high"] = c.environment.common_high.units;
      e["noise_bound"] = c.environment.noise_bound.units;
      break;
  }

  nlohmann::json j;
  j["mechanism"] = m;
  j["environment"] = e;
  j["num_bidders"] = c.num_bidders;
  j["num_rounds"] = c.num_rounds;
  nlohmann::json agents = nlohmann::json::array();
  for (const auto& a : c.agent_specs) agents.push_back(a.to_string());
  j["agent_specs"] = agents;
  j["rng_seed"] = c.rng_seed;
  if (c.intervention) j["intervention"] = to_string(*c.intervention);
  j["one_shot"] = c.one_shot;
  j["chain_of_thought"] = c.chain_of_thought;
  j["model_name"] = c.model_name;
  j["temperature"] = c.temperature;
  j["currency_symbol"] = c.currency_symbol;
  if (c.rule_text_override) j["rule_text_override"] = *c.rule_text_override;
  j["off_grid_policy"] = c.off_grid_policy == OffGridPolicy::Strict ? "strict" : "round_half_up";
  return j;
}

inline ValidationResult config_from_json(const nlohmann::json& j) {
  std::vector<std::string> errors;
  ExperimentConfig c;
  detail::check_keys(j,
                     {"mechanism", "environment", "num_bidders", "num_rounds", "agent_specs",
                      "rng_seed", "intervention", "one_shot", "chain_of_thought", "model_name",
                      "temperature", "currency_symbol", "rule_text_override", "off_grid_policy"},
                     "config", errors);
  try {
    if (j.contains("mechanism")) {
      const auto& m = j.at("mechanism");
      detail::check_keys(m,
                         {"family", "broadcast_dropouts", "num_periods", "closing_rule",
                          "hidden_reserve", "start_price", "max_price", "increment"},
                         "mechanism", errors);
      if (m.contains("family")) {
        auto f = family_from_string(m.at("family").get<std::string>());
        if (f) c.mechanism.family = *f;
        else errors.push_back("unknown mechanism family");
      } else {
        errors.push_back("mechanism.family missing");
      }
      if (m.contains("broadcast_dropouts"))
        c.mechanism.broadcast_dropouts = m.at("broadcast_dropouts").get<bool>();
      if (m.contains("num_periods")) c.mechanism.num_periods = m.at("num_periods").get<int>();
      if (m.contains("closing_rule")) c.mechanism.closing_rule = m.at("closing_rule").get<bool>();
      if (m.contains("hidden_reserve"))
        c.mechanism.hidden_reserve = Money{m.at("hidden_reserve").get<std::int64_t>()};
      if (m.contains("start_price"))
        c.mechanism.start_price = Money{m.at("start_price").get<std::int64_t>()};
      if (m.contains("max_price")) c.mechanism.max_price = Money{m.at("max_price").get<std::int64_t>()};
      if (m.contains("increment")) c.mechanism.increment = Money{m.at("increment").get<std::int64_t>()};
    } else {
      errors.push_back("mechanism missing");
    }

    if (j.contains("environment")) {
      const auto& e = j.at("environment");
      detail::check_keys(
          e, {"kind", "ipv_high", "common_low", "common_high", "private_high", "noise_bound"},
          "environment", errors);
      if (e.contains("kind")) {
        auto k = env_kind_from_string(e.at("kind").get<std::string>());
        if (k) c.environment.kind = *k;
        else errors.push_back("unknown environment kind");
      } else {
        errors.push_back("environment.kind missing");
      }
      if (c.environment.kind == EnvKind::CV) {
        c.environment.common_low = Money{20};
        c.environment.common_high = Money{79};
      }
      if (e.contains("ipv_high")) c.environment.ipv_high = Money{e.at("ipv_high").get<std::int64_t>()};
      if (e.contains("common_low")) c.environment.common_low = Money{e.at("common_low").get<std::int64_t>()};
      if (e.contains("common_high")) c.environment.common_high = Money{e.at("common_high").get<std::int64_t>()};
      if (e.contains("private_high")) c.environment.private_high = Money{e.at("private_high").get<std::int64_t>()};
      if (e.contains("noise_bound")) c.environment.noise_bound = Money{e.at("noise_bound").get<std::int64_t>()};
    } else {
      errors.push_back("environment missing");
    }

    if (j.contains("num_bidders")) c.num_bidders = j.at("num_bidders").get<int>();
    if (j.contains("num_rounds")) c.num_rounds = j.at("num_rounds").get<int>();
    if (j.contains("agent_specs")) {
      for (const auto& s : j.at("agent_specs")) {
        auto a = AgentSpec::parse(s.get<std::string>());
        if (a) c.agent_specs.push_back(*a);
        else errors.push_back("unknown agent spec '" + s.get<std::string>() + "'");
      }
    }
    if (j.contains("rng_seed")) c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    if (j.contains("intervention")) {
      auto k = intervention_from_string(j.at("intervention").get<std::string>());
      if (k) c.intervention = *k;
      else errors.push_back("unknown intervention");
    }
    if (j.contains("one_shot")) c.one_shot = j.at("one_shot").get<bool>();
    if (j.contains("chain_of_thought")) c.chain_of_thought = j.at("chain_of_thought").get<bool>();
    if (j.contains("model_name")) c.model_name = j.at("model_name").get<std::string>();
    if (j.contains("temperature")) c.temperature = j.at("temperature").get<double>();
    if (j.contains("currency_symbol")) c.currency_symbol = j.at("currency_symbol").get<std::string>();
    if (j.contains("rule_text_override"))
      c.rule_text_override = j.at("rule_text_override").get<std::string>();
    if (j.contains("off_grid_policy")) {
      const auto p = j.at("off_grid_policy").get<std::string>();
      if (p == "strict") c.off_grid_policy = OffGridPolicy::Strict;
      else if (p == "round_half_up") c.off_grid_policy = OffGridPolicy::RoundHalfUp;
      else errors.push_back("unknown off_grid_policy");
    }
  } catch (const nlohmann::json::exception& ex) {
    errors.push_back(std::string("config parse: ") + ex.what());
  }

  if (!errors.empty()) return {std::nullopt, errors};
  return validate_config(c);
}

}  // namespace auctionlab
