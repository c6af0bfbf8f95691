#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "auctionlab/config.hpp"
#include "auctionlab/environment.hpp"
#include "auctionlab/rng.hpp"
#include "auctionlab/types.hpp"

namespace auctionlab {

/// Counterfactual "would've preferred" bid for the FPSB winner: one
/// increment above the runner-up, never above the winner's actual bid.
inline Money preferred_bid_fpsb(const std::vector<Money>& bids, int winner,
                                Money increment = Money{1}) {
  Money second{0};
  bool found = false;
  for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
    if (i == winner) continue;
    if (!found || bids[i] > second) { second = bids[i]; found = true; }
  }
  if (!found) throw std::invalid_argument("preferred_bid_fpsb: need at least 2 bids");
  return std::min(second + increment, bids[winner]);
}

/// Settles one sealed-bid round for FPSB, SPSB, TPSB or all-pay. Bids must
/// already be on-grid and in range; ties at the top are broken uniformly
/// with `tie_rng`.
inline Outcome settle_sealed(const MechanismSpec& spec, const std::vector<Money>& bids,
                             const ValueDraw& values, RngStream& tie_rng) {
  const int n = static_cast<int>(bids.size());
  if (n < 2) throw std::invalid_argument("settle_sealed: need at least 2 bids");

  Outcome out;
  out.payments.assign(n, Money{0});
  out.profits.assign(n, Rational(0));

  if (spec.family == Family::AllPay) {
    for (int i = 0; i < n; ++i) {
      out.payments[i] = bids[i];
      out.profits[i] = -bids[i].as_rational();
    }
  }

  // TPSB needs a third bid to price against.
  if (spec.family == Family::TPSB && n < 3) return out;

  const Money top = *std::max_element(bids.begin(), bids.end());
  for (int i = 0; i < n; ++i)
    if (bids[i] == top) out.tied_winners.push_back(i);
  const int winner = out.tied_winners[tie_rng.choice(static_cast<int>(out.tied_winners.size()))];
  out.winner = winner;

  std::vector<Money> sorted = bids;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  Money price{0};
  switch (spec.family) {
    case Family::FPSB:
    case Family::AllPay:
      price = bids[winner];
      break;
    case Family::SPSB:
      price = sorted[1];
      break;
    case Family::TPSB:
      price = sorted[2];
      break;
    default:
      throw std::invalid_argument("settle_sealed: not a sealed family");
  }
  out.clearing_price = price;

  const Money settle_value = values.values[winner];
  Rational winner_profit;
  if (spec.family == Family::AllPay) {
    winner_profit = Rational(settle_value.units) - price.as_rational();
    out.profits[winner] = winner_profit;
  } else {
    out.payments[winner] = price;
    winner_profit = Rational(settle_value.units - price.units);
    out.profits[winner] = winner_profit;
  }

  if (spec.family == Family::FPSB)
    out.preferred_bid = preferred_bid_fpsb(bids, winner, spec.increment);
  return out;
}

/// CV variant: the winner's profit is the common value minus the price,
/// not their noisy perceived value.
inline Outcome settle_sealed_cv(const MechanismSpec& spec, const std::vector<Money>& bids,
                                const ValueDraw& values, RngStream& tie_rng) {
  Outcome out = settle_sealed(spec, bids, values, tie_rng);
  if (out.winner && values.common_component) {
    const int w = *out.winner;
    const Money price = *out.clearing_price;
    if (spec.family == Family::AllPay)
      out.profits[w] = Rational(values.common_component->units) - price.as_rational();
    else
      out.profits[w] = true_utility_cv(*values.common_component, price);
  }
  return out;
}

}  // namespace auctionlab
