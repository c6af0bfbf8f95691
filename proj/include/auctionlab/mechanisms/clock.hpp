#pragma once

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "auctionlab/config.hpp"
#include "auctionlab/environment.hpp"
#include "auctionlab/rng.hpp"
#include "auctionlab/types.hpp"

namespace auctionlab {

enum class ClockDecision { Stay, Exit };

/// State of one ascending-clock round. The clock displays start_price and
/// immediately counts up; the first stay/exit query happens one increment
/// above the start.
struct ClockState {
  Money current_price{1};
  Money start_price{0};
  Money increment{1};
  std::set<int> active;
  std::vector<std::pair<Money, int>> dropout_log;  // (price, bidder), nondecreasing prices
  bool broadcast = true;
  int tick_index = 0;  // completed clock cycles
};

inline ClockState make_clock_state(const MechanismSpec& spec, int n) {
  ClockState s;
  s.start_price = spec.start_price;
  s.increment = spec.increment;
  s.current_price = spec.start_price + spec.increment;
  s.broadcast = spec.broadcast_dropouts;
  for (int i = 0; i < n; ++i) s.active.insert(i);
  return s;
}

namespace detail {
inline Outcome clock_outcome(const std::vector<int>& candidates, Money price,
                             const ValueDraw& values, RngStream& rng) {
  const int n = static_cast<int>(values.values.size());
  Outcome out;
  out.payments.assign(n, Money{0});
  out.profits.assign(n, Rational(0));
  out.tied_winners = candidates;
  const int winner = candidates[rng.choice(static_cast<int>(candidates.size()))];
  out.winner = winner;
  out.clearing_price = price;
  out.payments[winner] = price;
  out.profits[winner] = Rational(values.values[winner].units - price.units);
  return out;
}
}  // namespace detail

/// Advances the clock by one cycle. Decisions are collected at the current
/// price; exits are recorded there. Returns a terminal Outcome when the
/// round ends, otherwise std::nullopt after raising the price.
inline std::optional<Outcome> clock_tick(ClockState& state,
                                         const std::map<int, ClockDecision>& decisions,
                                         const MechanismSpec& spec, const ValueDraw& values,
                                         RngStream& rng) {
  if (state.active.size() < 2)
    throw std::logic_error("clock_tick: round already terminal");
  for (const auto& [bidder, d] : decisions) {
    (void)d;
    if (!state.active.count(bidder))
      throw std::invalid_argument("clock_tick: decision from inactive bidder");
  }

  std::vector<int> exiting;
  for (int bidder : state.active) {
    auto it = decisions.find(bidder);
    if (it != decisions.end() && it->second == ClockDecision::Exit) exiting.push_back(bidder);
  }
  for (int bidder : exiting) {
    state.dropout_log.emplace_back(state.current_price, bidder);
    state.active.erase(bidder);
  }
  ++state.tick_index;

  if (state.active.size() == 1)
    return detail::clock_outcome({*state.active.begin()}, state.current_price, values, rng);
  if (state.active.empty())
    // Everyone left at once: random winner at the mutual drop-out price.
    return detail::clock_outcome(exiting, state.current_price, values, rng);

  const Money cap = spec.max_price.value_or(Money{std::numeric_limits<std::int64_t>::max()});
  if (state.current_price >= cap) {
    // Cap reached with several bidders still in: forced termination, random
    // winner among the active set at the cap.
    std::vector<int> remaining(state.active.begin(), state.active.end());
    return detail::clock_outcome(remaining, state.current_price, values, rng);
  }
  state.current_price = state.current_price + spec.increment;
  return std::nullopt;
}

/// The transcript fragment a bidder sees before deciding. AC broadcasts the
/// dropout history; AC-B shows nothing ("None").
inline std::string clock_observation(const ClockState& state) {
  if (!state.broadcast || state.tick_index == 0) return "None";
  std::ostringstream os;
  os << "The previous biddings are: [";
  for (int k = 1; k <= state.tick_index; ++k) {
    const Money price_at_k = state.start_price + Money{k * state.increment.units};
    int dropped = 0;
    for (const auto& [p, b] : state.dropout_log) {
      (void)b;
      if (p == price_at_k) ++dropped;
    }
    if (k > 1) os << ", ";
    os << "'In clock round " << k << ", the price was " << price_at_k.units << ", ";
    if (dropped == 0)
      os << "no players dropped out'";
    else if (dropped == 1)
      os << "1 player dropped out'";
    else
      os << dropped << " players dropped out'";
  }
  os << "].";
  return os.str();
}

}  // namespace auctionlab
