#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "auctionlab/config.hpp"
#include "auctionlab/rng.hpp"

namespace auctionlab {

/// Map from grid values to bids.
struct StrategyTable {
  std::vector<std::int64_t> grid;
  std::vector<double> bid;  // parallel to grid

  double bid_at(std::int64_t v) const {
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (grid[i] == v) return bid[i];
    throw std::out_of_range("StrategyTable: value not on grid");
  }
};

/// Risk-neutral symmetric equilibrium bid for the uniform-IPV sealed
/// formats, real-valued; callers snap to the grid for play.
///   FPSB:   ((n-1)/n) v
///   SPSB:   v
///   TPSB:   ((n-1)/(n-2)) v
///   AllPay: ((n-1)/n) v^n / high^(n-1)
inline double rn_equilibrium_bid(Family family, double v, int n, double high) {
  if (n < 2) throw std::invalid_argument("rn_equilibrium_bid: need n >= 2");
  if (v < 0.0 || v > high) throw std::invalid_argument("rn_equilibrium_bid: value out of range");
  switch (family) {
    case Family::FPSB:
      return (static_cast<double>(n - 1) / n) * v;
    case Family::SPSB:
      return v;
    case Family::TPSB:
      if (n < 3) throw std::invalid_argument("rn_equilibrium_bid: tpsb needs n >= 3");
      return (static_cast<double>(n - 1) / (n - 2)) * v;
    case Family::AllPay:
      return (static_cast<double>(n - 1) / n) * std::pow(v, n) / std::pow(high, n - 1);
    default:
      throw std::invalid_argument("rn_equilibrium_bid: sealed families only");
  }
}

/// Naive common-value bid E[c | v]: piecewise linear because the noise
/// support truncates at the edges of the common-value range.
inline double cv_naive_bid(double v, double common_low = 20.0, double common_high = 79.0,
                           double noise = 20.0) {
  if (v < common_low - noise || v > common_high + noise)
    throw std::invalid_argument("cv_naive_bid: value outside support");
  const double lo_kink = common_low + noise;   // 40
  const double hi_kink = common_high - noise;  // 59
  if (v < lo_kink) return (v + lo_kink) / 2.0;
  if (v > hi_kink) return (v + hi_kink) / 2.0;
  return v;
}

struct McEstimate {
  double estimate = 0.0;
  double se = 0.0;
  long accepted = 0;
};

/// Monte Carlo estimate of E[c | v_i = v, p_i = p^(1)]: the adverse-
/// selection-corrected bid. Rejection sampling over (c, opponents' shocks)
/// consistent with the observed v; the own shock is pinned at v - c.
inline McEstimate cv_bne_bid(std::int64_t v, int n, const ValueEnvironment& env,
                             long sample_count, RngStream& rng) {
  const std::int64_t cl = env.common_low.units, ch = env.common_high.units;
  const std::int64_t nb = env.noise_bound.units;
  const std::int64_t c_lo = std::max(cl, v - nb);
  const std::int64_t c_hi = std::min(ch, v + nb);
  if (c_lo > c_hi) throw std::invalid_argument("cv_bne_bid: zero-support conditioning event");

  double sum = 0.0, sumsq = 0.0;
  long accepted = 0;
  for (long s = 0; s < sample_count; ++s) {
    const std::int64_t c = rng.uniform_int(c_lo, c_hi);
    const std::int64_t own = v - c;
    bool highest = true;
    int tied = 0;
    for (int j = 0; j < n - 1; ++j) {
      const std::int64_t p = rng.uniform_int(-nb, nb);
      if (p > own) { highest = false; break; }
      if (p == own) ++tied;
    }
    if (!highest) continue;
    if (tied > 0 && rng.choice(tied + 1) != 0) continue;  // uniform among tied top shocks
    sum += static_cast<double>(c);
    sumsq += static_cast<double>(c) * static_cast<double>(c);
    ++accepted;
  }
  if (accepted == 0) throw std::runtime_error("cv_bne_bid: no accepted samples");
  McEstimate e;
  e.accepted = accepted;
  e.estimate = sum / accepted;
  const double var = std::max(0.0, sumsq / accepted - e.estimate * e.estimate);
  e.se = std::sqrt(var / accepted);
  return e;
}

/// Exact expected payoff per value for symmetric play on a grid: own
/// strategy `own_bid_fn`, opponents playing `opponent_bid_fn` with values
/// uniform on `grid`. Enumeration over opponent profiles with uniform
/// tie-splitting.
class GridAuctionCalculator {
 public:
  GridAuctionCalculator(Family family, std::function<std::int64_t(std::int64_t)> opponent_bid_fn,
                        int n, std::vector<std::int64_t> grid)
      : family_(family), n_(n), grid_(std::move(grid)) {
    if (family_ == Family::TPSB && n_ < 3)
      throw std::invalid_argument("GridAuctionCalculator: tpsb needs n >= 3");
    // Opponent bid pmf induced by the uniform value law.
    const double pv = 1.0 / static_cast<double>(grid_.size());
    for (std::int64_t v : grid_) {
      const std::int64_t b = opponent_bid_fn(v);
      auto it = std::find(opp_support_.begin(), opp_support_.end(), b);
      if (it == opp_support_.end()) {
        opp_support_.push_back(b);
        opp_pmf_.push_back(pv);
      } else {
        opp_pmf_[it - opp_support_.begin()] += pv;
      }
    }
  }

  /// E[payoff] at value v for own bid b. Payoff is linear in v given b:
  /// E = A(b) * v - B(b) (all-pay: minus the unconditional own bid).
  double expected_payoff(std::int64_t v, std::int64_t b) const {
    const auto [a, pay] = moments(b);
    if (family_ == Family::AllPay) return a * static_cast<double>(v) - static_cast<double>(b);
    return a * static_cast<double>(v) - pay;
  }

  /// Lowest payoff-maximizing on-grid bid for each value, scanning bids on
  /// [0, bid_max].
  StrategyTable best_response(std::int64_t bid_max) const {
    StrategyTable t;
    t.grid = grid_;
    std::vector<std::pair<double, double>> mom;  // (A, B) per bid
    mom.reserve(bid_max + 1);
    for (std::int64_t b = 0; b <= bid_max; ++b) mom.push_back(moments(b));
    for (std::int64_t v : grid_) {
      double best = -1e300;
      std::int64_t best_b = 0;
      for (std::int64_t b = 0; b <= bid_max; ++b) {
        const double payoff = family_ == Family::AllPay
                                  ? mom[b].first * v - static_cast<double>(b)
                                  : mom[b].first * v - mom[b].second;
        if (payoff > best + 1e-12) { best = payoff; best_b = b; }
      }
      t.bid.push_back(static_cast<double>(best_b));
    }
    return t;
  }

  std::vector<double> payoff_curve(std::function<std::int64_t(std::int64_t)> own_bid_fn) const {
    std::vector<double> out;
    out.reserve(grid_.size());
    for (std::int64_t v : grid_) out.push_back(expected_payoff(v, own_bid_fn(v)));
    return out;
  }

 private:
  /// (A, B) for one own bid: enumerate sorted opponent bid profiles.
  std::pair<double, double> moments(std::int64_t b) const {
    double a = 0.0, pay = 0.0;
    std::vector<std::int64_t> profile;
    enumerate(0, n_ - 1, 1.0, profile, b, a, pay);
    return {a, pay};
  }

  void enumerate(std::size_t start_idx, int remaining, double weight,
                 std::vector<std::int64_t>& profile, std::int64_t b, double& a,
                 double& pay) const {
    if (remaining == 0) {
      accumulate(profile, weight, b, a, pay);
      return;
    }
    // Ordered enumeration over opponent seats; profiles are tuples, so the
    // weight is just the pmf product. Cost is |support|^(n-1).
    for (std::size_t i = 0; i < opp_support_.size(); ++i) {
      profile.push_back(opp_support_[i]);
      enumerate(start_idx, remaining - 1, weight * opp_pmf_[i], profile, b, a, pay);
      profile.pop_back();
    }
  }

  void accumulate(const std::vector<std::int64_t>& profile, double w, std::int64_t b, double& a,
                  double& pay) const {
    std::vector<std::int64_t> sorted = profile;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const std::int64_t top = sorted[0];
    double share = 0.0;
    if (b > top) share = 1.0;
    else if (b == top) {
      const int k = static_cast<int>(std::count(sorted.begin(), sorted.end(), b));
      share = 1.0 / (k + 1);
    } else {
      return;
    }
    std::int64_t payment = 0;
    switch (family_) {
      case Family::FPSB:
      case Family::AllPay:
        payment = b;
        break;
      case Family::SPSB:
        payment = top;  // highest opponent bid; equals b on a tie
        break;
      case Family::TPSB:
        payment = sorted[1];  // third-highest of all n bids when b >= top
        break;
      default:
        throw std::invalid_argument("GridAuctionCalculator: sealed families only");
    }
    a += w * share;
    pay += w * share * static_cast<double>(payment);
  }

  Family family_;
  int n_;
  std::vector<std::int64_t> grid_;
  std::vector<std::int64_t> opp_support_;
  std::vector<double> opp_pmf_;
};

inline std::vector<double> grid_expected_payoff(Family family,
                                                std::function<std::int64_t(std::int64_t)> own,
                                                std::function<std::int64_t(std::int64_t)> opp,
                                                int n, const std::vector<std::int64_t>& grid) {
  GridAuctionCalculator calc(family, std::move(opp), n, grid);
  return calc.payoff_curve(std::move(own));
}

inline StrategyTable grid_best_response(Family family,
                                        std::function<std::int64_t(std::int64_t)> opp, int n,
                                        const std::vector<std::int64_t>& grid) {
  GridAuctionCalculator calc(family, std::move(opp), n, grid);
  return calc.best_response(grid.back());
}

/// Analytic expected revenue under the Table-of-equilibria strategies with
/// uniform IPV values: high * (n-1)/(n+1) for every standard format
/// (revenue equivalence).
inline double expected_equilibrium_revenue(Family family, int n, double high) {
  switch (family) {
    case Family::FPSB:
    case Family::SPSB:
    case Family::TPSB:
    case Family::AllPay:
      return high * static_cast<double>(n - 1) / static_cast<double>(n + 1);
    default:
      throw std::invalid_argument("expected_equilibrium_revenue: sealed families only");
  }
}

/// Snaps a real-valued strategy bid to the grid, round half-up.
inline Money snap_bid(double bid, Money low, Money high) {
  const auto snapped = static_cast<std::int64_t>(std::floor(bid + 0.5));
  return Money{std::clamp(snapped, low.units, high.units)};
}

}  // namespace auctionlab
