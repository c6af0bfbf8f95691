#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "auctionlab/config.hpp"
#include "auctionlab/money.hpp"
#include "auctionlab/rng.hpp"

namespace auctionlab {

/// One round's value realization.
struct ValueDraw {
  std::vector<Money> values;
  std::optional<Money> common_component;              // APV / CV
  std::optional<std::vector<std::int64_t>> private_components;  // signed, APV / CV
};

/// Draws bidder values on the integer grid. The common component (APV/CV)
/// is redrawn each call; pass one stream per round.
inline ValueDraw draw_values(const ValueEnvironment& env, int n, RngStream& rng) {
  if (n < 2) throw std::invalid_argument("draw_values: need at least 2 bidders");
  ValueDraw d;
  d.values.reserve(n);
  switch (env.kind) {
    case EnvKind::IPV:
      for (int i = 0; i < n; ++i)
        d.values.push_back(Money{rng.uniform_int(0, env.ipv_high.units)});
      break;
    case EnvKind::APV: {
      const std::int64_t c = rng.uniform_int(env.common_low.units, env.common_high.units);
      d.common_component = Money{c};
      d.private_components = std::vector<std::int64_t>();
      for (int i = 0; i < n; ++i) {
        const std::int64_t p = rng.uniform_int(0, env.private_high.units);
        d.private_components->push_back(p);
        d.values.push_back(Money{c + p});
      }
      break;
    }
    case EnvKind::CV: {
      const std::int64_t c = rng.uniform_int(env.common_low.units, env.common_high.units);
      d.common_component = Money{c};
      d.private_components = std::vector<std::int64_t>();
      for (int i = 0; i < n; ++i) {
        const std::int64_t p = rng.uniform_int(-env.noise_bound.units, env.noise_bound.units);
        d.private_components->push_back(p);
        d.values.push_back(Money{c + p});
      }
      break;
    }
  }
  return d;
}

/// CV winner's realized utility: the common value minus the price paid.
/// Negative exactly when the winner was cursed.
inline Rational true_utility_cv(Money common, Money price) {
  return Rational(common.units - price.units);
}

}  // namespace auctionlab
