#include <catch2/catch_amalgamated.hpp>

#include "auctionlab/mechanisms/ebay.hpp"

using namespace auctionlab;

namespace {

MechanismSpec espec(bool closing = false, std::optional<std::int64_t> reserve = std::nullopt,
                    int periods = 10) {
  MechanismSpec m;
  m.family = Family::EbayProxy;
  m.num_periods = periods;
  m.closing_rule = closing;
  if (reserve) m.hidden_reserve = Money{*reserve};
  m.start_price = Money{0};
  m.increment = Money{1};
  return m;
}

std::vector<Money> mv(std::vector<std::int64_t> v) {
  std::vector<Money> out;
  for (auto x : v) out.push_back(Money{x});
  return out;
}

}  // namespace

TEST_CASE("proxy price is second-highest max plus one increment") {
  auto spec = espec();
  RngStream perm(1);
  auto s = make_ebay_state(spec, 3, perm);
  CHECK(s.current_price == Money{0});
  CHECK(ebay_apply_max_bid(s, 0, Money{70}, spec) == EbayBidError::None);
  CHECK(s.leader == 0);
  CHECK(s.current_price == Money{0});  // sole bidder: price stays at start
  CHECK(ebay_apply_max_bid(s, 1, Money{50}, spec) == EbayBidError::None);
  CHECK(s.leader == 0);
  CHECK(s.current_price == Money{51});
  CHECK(ebay_apply_max_bid(s, 2, Money{30}, spec) == EbayBidError::None);
  CHECK(s.current_price == Money{51});  // third bid below the second changes nothing

  // Close out: advance through all days with no further action.
  while (!s.closed) ebay_advance_period(s, false, spec, perm);
  auto out = ebay_outcome(s, mv({70, 50, 30}));
  REQUIRE(out.winner == 0);
  CHECK(out.clearing_price == Money{51});
  CHECK(out.profits[0] == Rational(19));
}

TEST_CASE("equal max bids favor the earlier timestamp") {
  auto spec = espec();
  RngStream perm(1);
  auto s = make_ebay_state(spec, 2, perm);
  CHECK(ebay_apply_max_bid(s, 1, Money{40}, spec) == EbayBidError::None);
  CHECK(ebay_apply_max_bid(s, 0, Money{40}, spec) == EbayBidError::None);
  CHECK(s.leader == 1);
  CHECK(s.current_price == Money{40});  // capped at the leader's max
}

TEST_CASE("lower re-bids are rejected and equal re-bids are no-ops") {
  auto spec = espec();
  RngStream perm(1);
  auto s = make_ebay_state(spec, 2, perm);
  REQUIRE(ebay_apply_max_bid(s, 0, Money{40}, spec) == EbayBidError::None);
  const auto stamp = s.bid_timestamps[0];
  CHECK(ebay_apply_max_bid(s, 0, Money{30}, spec) == EbayBidError::CannotBidLower);
  CHECK(ebay_apply_max_bid(s, 0, Money{40}, spec) == EbayBidError::None);
  CHECK(s.bid_timestamps[0] == stamp);  // unchanged: no new timestamp
  CHECK(s.max_bids[0] == Money{40});
}

TEST_CASE("unmet hidden reserve means no sale") {
  auto spec = espec(false, 60);
  RngStream perm(1);
  auto s = make_ebay_state(spec, 2, perm);
  CHECK(ebay_apply_max_bid(s, 0, Money{50}, spec) == EbayBidError::None);
  CHECK_FALSE(s.reserve_met);
  while (!s.closed) ebay_advance_period(s, false, spec, perm);
  auto out = ebay_outcome(s, mv({70, 50}));
  CHECK_FALSE(out.winner.has_value());
  CHECK_FALSE(final_winning_bid_time(s).has_value());
}

TEST_CASE("met reserve floors the displayed price") {
  auto spec = espec(false, 60);
  RngStream perm(1);
  auto s = make_ebay_state(spec, 2, perm);
  CHECK(ebay_apply_max_bid(s, 0, Money{80}, spec) == EbayBidError::None);
  CHECK(s.reserve_met);
  CHECK(s.current_price == Money{60});
  CHECK(ebay_apply_max_bid(s, 1, Money{70}, spec) == EbayBidError::None);
  CHECK(s.current_price == Money{71});
  while (!s.closed) ebay_advance_period(s, false, spec, perm);
  auto out = ebay_outcome(s, mv({90, 70}));
  REQUIRE(out.winner == 0);
  CHECK(out.clearing_price == Money{71});
}

TEST_CASE("closing rule extends the horizon on a final-day leader change") {
  auto spec = espec(true, std::nullopt, 3);
  RngStream perm(1);
  auto s = make_ebay_state(spec, 2, perm);
  CHECK(ebay_apply_max_bid(s, 0, Money{40}, spec) == EbayBidError::None);
  CHECK(ebay_advance_period(s, false, spec, perm) == EbayAdvance::Continue);
  CHECK(ebay_advance_period(s, false, spec, perm) == EbayAdvance::Continue);
  CHECK(s.day == 3);
  // Sniper takes the lead on the final day.
  CHECK(ebay_apply_max_bid(s, 1, Money{60}, spec) == EbayBidError::None);
  CHECK(ebay_advance_period(s, true, spec, perm) == EbayAdvance::Extended);
  CHECK(s.horizon == 4);
  CHECK(s.day == 4);
  CHECK(s.extensions == 1);
  // Quiet extension day: now it closes.
  CHECK(ebay_advance_period(s, false, spec, perm) == EbayAdvance::Closed);
  REQUIRE(final_winning_bid_time(s).has_value());
  CHECK(*final_winning_bid_time(s) == 3);
}

TEST_CASE("without the closing rule the final day ends the auction") {
  auto spec = espec(false, std::nullopt, 3);
  RngStream perm(1);
  auto s = make_ebay_state(spec, 2, perm);
  CHECK(ebay_apply_max_bid(s, 0, Money{40}, spec) == EbayBidError::None);
  ebay_advance_period(s, false, spec, perm);
  ebay_advance_period(s, false, spec, perm);
  CHECK(ebay_apply_max_bid(s, 1, Money{60}, spec) == EbayBidError::None);
  CHECK(ebay_advance_period(s, true, spec, perm) == EbayAdvance::Closed);
  CHECK(*final_winning_bid_time(s) == 3);
}

TEST_CASE("price transcript reads day by day") {
  auto spec = espec();
  RngStream perm(1);
  auto s = make_ebay_state(spec, 2, perm);
  CHECK(ebay_price_transcript(s) == "None");
  ebay_apply_max_bid(s, 0, Money{40}, spec);
  ebay_apply_max_bid(s, 1, Money{2}, spec);
  ebay_advance_period(s, false, spec, perm);
  ebay_apply_max_bid(s, 1, Money{10}, spec);
  CHECK(ebay_price_transcript(s) ==
        "On day 1, the price changed to 3. On day 2, the price changed to 11.");
}

TEST_CASE("state guards against querying an open auction") {
  auto spec = espec();
  RngStream perm(1);
  auto s = make_ebay_state(spec, 2, perm);
  CHECK_THROWS_AS(ebay_outcome(s, mv({1, 1})), std::logic_error);
  CHECK_THROWS_AS(final_winning_bid_time(s), std::logic_error);
}
