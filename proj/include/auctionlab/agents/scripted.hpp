#pragma once

// Deterministic scripted bidders. They share the strategy formulas with the
// benchmark oracles, so experiments over them double as oracle fixtures.

#include <stdexcept>

#include "auctionlab/config.hpp"
#include "auctionlab/mechanisms/clock.hpp"
#include "auctionlab/money.hpp"
#include "auctionlab/oracles.hpp"
#include "auctionlab/rng.hpp"

namespace auctionlab {

/// Sealed-format bid for a scripted agent.
inline Money scripted_sealed_bid(const AgentSpec& spec, Money value, const ExperimentConfig& cfg,
                                 RngStream& rng) {
  const Money low{0};
  const Money high = cfg.environment.value_high();
  const double v = static_cast<double>(value.units);
  switch (spec.kind) {
    case AgentSpec::Kind::Truthful:
      return value;
    case AgentSpec::Kind::EquilibriumRN: {
      if (cfg.environment.kind != EnvKind::IPV && cfg.mechanism.family != Family::SPSB)
        throw std::invalid_argument("scripted_sealed_bid: equilibrium agent needs ipv");
      if (cfg.mechanism.family == Family::SPSB) return value;  // dominant, any environment
      const double b = rn_equilibrium_bid(cfg.mechanism.family, v, cfg.num_bidders,
                                          static_cast<double>(high.units));
      return snap_bid(b, low, high);
    }
    case AgentSpec::Kind::Shaded:
      return snap_bid(spec.fraction * v, low, high);
    case AgentSpec::Kind::NaiveCV: {
      if (cfg.environment.kind != EnvKind::CV)
        throw std::invalid_argument("scripted_sealed_bid: naive_cv agent needs cv environment");
      const double b = cv_naive_bid(v, static_cast<double>(cfg.environment.common_low.units),
                                    static_cast<double>(cfg.environment.common_high.units),
                                    static_cast<double>(cfg.environment.noise_bound.units));
      return snap_bid(b, low, high);
    }
    case AgentSpec::Kind::ConstantBid:
      return snap_bid(static_cast<double>(spec.constant_bid.units), low, high);
    case AgentSpec::Kind::Random:
      return Money{rng.uniform_int(low.units, high.units)};
    default:
      throw std::invalid_argument("scripted_sealed_bid: agent kind has no sealed strategy");
  }
}

/// Stay/exit decision at the current clock price.
inline ClockDecision scripted_clock_decision(const AgentSpec& spec, Money value,
                                             Money current_price, RngStream& rng) {
  switch (spec.kind) {
    case AgentSpec::Kind::Truthful:
    case AgentSpec::Kind::EquilibriumRN:  // truthful exit is the dominant strategy
      return current_price >= value ? ClockDecision::Exit : ClockDecision::Stay;
    case AgentSpec::Kind::Shaded: {
      const double cutoff = spec.fraction * static_cast<double>(value.units);
      return static_cast<double>(current_price.units) >= cutoff ? ClockDecision::Exit
                                                                : ClockDecision::Stay;
    }
    case AgentSpec::Kind::ConstantBid:
      return current_price >= spec.constant_bid ? ClockDecision::Exit : ClockDecision::Stay;
    case AgentSpec::Kind::NeverExit:
      return ClockDecision::Stay;
    case AgentSpec::Kind::Random:
      return rng.choice(2) == 0 ? ClockDecision::Stay : ClockDecision::Exit;
    default:
      throw std::invalid_argument("scripted_clock_decision: agent kind has no clock strategy");
  }
}

struct ScriptedEbayAction {
  bool hold = true;
  Money amount{0};
};

/// Daily proxy-bid decision. `day` and `horizon` are the live values, so a
/// sniper follows closing-rule extensions onto each new final day.
inline ScriptedEbayAction scripted_ebay_decision(const AgentSpec& spec, Money value, int day,
                                                 int horizon, std::optional<Money> last_bid,
                                                 const ExperimentConfig& cfg, RngStream& rng) {
  ScriptedEbayAction a;
  auto place = [&](Money amt) {
    if (amt.units <= 0) return;                 // nothing worth bidding
    if (last_bid && amt <= *last_bid) return;   // cannot raise, hold instead
    a.hold = false;
    a.amount = amt;
  };
  switch (spec.kind) {
    case AgentSpec::Kind::Truthful:
      if (day == 1) place(value);
      break;
    case AgentSpec::Kind::Sniper:
      if (day >= horizon) place(value);
      break;
    case AgentSpec::Kind::ConstantBid:
      if (day == 1) place(spec.constant_bid);
      break;
    case AgentSpec::Kind::Shaded:
      if (day == 1)
        place(snap_bid(spec.fraction * static_cast<double>(value.units), Money{0},
                       cfg.environment.value_high()));
      break;
    case AgentSpec::Kind::Random:
      if (day == 1) place(Money{rng.uniform_int(0, cfg.environment.value_high().units)});
      break;
    default:
      throw std::invalid_argument("scripted_ebay_decision: agent kind has no ebay strategy");
  }
  return a;
}

}  // namespace auctionlab
