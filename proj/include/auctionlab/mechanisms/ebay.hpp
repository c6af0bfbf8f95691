#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "auctionlab/config.hpp"
#include "auctionlab/environment.hpp"
#include "auctionlab/rng.hpp"
#include "auctionlab/types.hpp"

namespace auctionlab {

/// Proxy-bidding auction state across days.
struct EbayState {
  int day = 1;                                   // 1-based
  int horizon = 10;                              // current final day (grows under the closing rule)
  std::vector<std::optional<Money>> max_bids;    // per bidder
  std::vector<std::pair<int, int>> bid_timestamps;  // (day, within-day order) of last change
  Money current_price{0};
  std::optional<int> leader;
  std::optional<Money> reserve;
  bool reserve_met = false;
  int extensions = 0;
  std::vector<int> ordering;                     // this day's permutation
  std::vector<std::pair<int, Money>> price_change_log;  // (day, new price)
  int within_day_counter = 0;
  bool closed = false;
};

inline EbayState make_ebay_state(const MechanismSpec& spec, int n, RngStream& perm_rng) {
  EbayState s;
  s.horizon = spec.num_periods.value_or(10);
  s.max_bids.assign(n, std::nullopt);
  s.bid_timestamps.assign(n, {0, 0});
  s.current_price = spec.start_price;
  s.reserve = spec.hidden_reserve;
  s.ordering = perm_rng.permutation(n);
  return s;
}

namespace detail {
/// Recomputes leader and displayed price from the max-bid book.
inline void ebay_refresh(EbayState& s, const MechanismSpec& spec) {
  const int n = static_cast<int>(s.max_bids.size());
  int leader = -1;
  for (int i = 0; i < n; ++i) {
    if (!s.max_bids[i]) continue;
    if (leader < 0 || *s.max_bids[i] > *s.max_bids[leader] ||
        (*s.max_bids[i] == *s.max_bids[leader] &&
         s.bid_timestamps[i] < s.bid_timestamps[leader]))
      leader = i;
  }
  if (leader < 0) { s.leader.reset(); return; }
  s.leader = leader;

  Money second{0};
  bool have_second = false;
  for (int i = 0; i < n; ++i) {
    if (i == leader || !s.max_bids[i]) continue;
    if (!have_second || *s.max_bids[i] > second) { second = *s.max_bids[i]; have_second = true; }
  }
  Money price = spec.start_price;
  if (have_second)
    price = std::min(*s.max_bids[leader], second + spec.increment);
  if (s.reserve && *s.max_bids[leader] >= *s.reserve) {
    s.reserve_met = true;
    price = std::max(price, *s.reserve);  // once met, the display floors at the reserve
  } else if (s.reserve) {
    s.reserve_met = false;
  }
  if (price != s.current_price) {
    s.current_price = price;
    s.price_change_log.emplace_back(s.day, price);
  }
}
}  // namespace detail

enum class EbayBidError { None, CannotBidLower };

/// Registers a new maximum bid. Holding is modeled as not calling this.
/// A decrease is rejected ("cannot bid lower"); re-submitting the same max
/// is a no-op.
inline EbayBidError ebay_apply_max_bid(EbayState& s, int bidder, Money amount,
                                       const MechanismSpec& spec) {
  if (s.max_bids[bidder] && amount < *s.max_bids[bidder]) return EbayBidError::CannotBidLower;
  if (s.max_bids[bidder] && amount == *s.max_bids[bidder]) return EbayBidError::None;
  s.max_bids[bidder] = amount;
  s.bid_timestamps[bidder] = {s.day, ++s.within_day_counter};
  detail::ebay_refresh(s, spec);
  return EbayBidError::None;
}

enum class EbayAdvance { Continue, Extended, Closed };

/// Moves from the current day to the next. On the final day the auction
/// closes unless the closing rule is on and the leader changed during that
/// day, in which case the horizon is extended by one period.
inline EbayAdvance ebay_advance_period(EbayState& s, bool final_period_new_leader,
                                       const MechanismSpec& spec, RngStream& perm_rng) {
  const bool closing_rule = spec.closing_rule.value_or(false);
  if (s.day >= s.horizon) {
    if (closing_rule && final_period_new_leader) {
      ++s.horizon;
      ++s.extensions;
      ++s.day;
      s.ordering = perm_rng.permutation(static_cast<int>(s.max_bids.size()));
      return EbayAdvance::Extended;
    }
    s.closed = true;
    return EbayAdvance::Closed;
  }
  ++s.day;
  s.ordering = perm_rng.permutation(static_cast<int>(s.max_bids.size()));
  return EbayAdvance::Continue;
}

/// The period index of the eventual winner's last max-bid change, or none
/// when the reserve was unmet.
inline std::optional<int> final_winning_bid_time(const EbayState& s) {
  if (!s.closed) throw std::logic_error("final_winning_bid_time: auction not closed");
  if (!s.leader) return std::nullopt;
  if (s.reserve && !s.reserve_met) return std::nullopt;
  return s.bid_timestamps[*s.leader].first;
}

inline Outcome ebay_outcome(const EbayState& s, const std::vector<Money>& values) {
  if (!s.closed) throw std::logic_error("ebay_outcome: auction not closed");
  const int n = static_cast<int>(values.size());
  Outcome out;
  out.payments.assign(n, Money{0});
  out.profits.assign(n, Rational(0));
  if (!s.leader || (s.reserve && !s.reserve_met)) return out;  // no sale
  const int w = *s.leader;
  out.winner = w;
  out.tied_winners = {w};
  out.clearing_price = s.current_price;
  out.payments[w] = s.current_price;
  out.profits[w] = Rational(values[w].units - s.current_price.units);
  return out;
}

/// Price-change transcript, e.g. "On day 1, the price changed to 1. On day
/// 2, the price changed to 3."
inline std::string ebay_price_transcript(const EbayState& s) {
  if (s.price_change_log.empty()) return "None";
  std::ostringstream os;
  for (std::size_t i = 0; i < s.price_change_log.size(); ++i) {
    if (i > 0) os << " ";
    os << "On day " << s.price_change_log[i].first << ", the price changed to "
       << s.price_change_log[i].second.units << ".";
  }
  return os.str();
}

}  // namespace auctionlab
