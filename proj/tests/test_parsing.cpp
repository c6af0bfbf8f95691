#include <catch2/catch_amalgamated.hpp>

#include "auctionlab/agents/parsing.hpp"

using namespace auctionlab;

TEST_CASE("scalar bid parsing") {
  const Money lo{0}, hi{99};
  SECTION("plain number") {
    auto r = parse_scalar_bid("44", lo, hi, OffGridPolicy::RoundHalfUp);
    REQUIRE(r.ok());
    CHECK(r.value->bid == Money{44});
    CHECK(r.value->raw == 44.0);
    CHECK_FALSE(r.value->corrected);
  }
  SECTION("number with currency and prose") {
    auto r = parse_scalar_bid("I will bid $57.", lo, hi, OffGridPolicy::RoundHalfUp);
    REQUIRE(r.ok());
    CHECK(r.value->bid == Money{57});
  }
  SECTION("fractional bids round half up") {
    auto r = parse_scalar_bid("36.5", lo, hi, OffGridPolicy::RoundHalfUp);
    REQUIRE(r.ok());
    CHECK(r.value->bid == Money{37});
    CHECK(r.value->raw == 36.5);
    CHECK(r.value->corrected);
    auto d = parse_scalar_bid("36.4", lo, hi, OffGridPolicy::RoundHalfUp);
    REQUIRE(d.ok());
    CHECK(d.value->bid == Money{36});
  }
  SECTION("strict policy rejects off-grid") {
    auto r = parse_scalar_bid("36.5", lo, hi, OffGridPolicy::Strict);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error == ParseErrorKind::OffGrid);
  }
  SECTION("failure modes") {
    CHECK(parse_scalar_bid("no idea", lo, hi, OffGridPolicy::RoundHalfUp).error ==
          ParseErrorKind::NoNumber);
    CHECK(parse_scalar_bid("between 40 and 50", lo, hi, OffGridPolicy::RoundHalfUp).error ==
          ParseErrorKind::Ambiguous);
    CHECK(parse_scalar_bid("150", lo, hi, OffGridPolicy::RoundHalfUp).error ==
          ParseErrorKind::OutOfRange);
    CHECK(parse_scalar_bid("-5", lo, hi, OffGridPolicy::RoundHalfUp).error ==
          ParseErrorKind::OutOfRange);
  }
  SECTION("dash without digits is not a number") {
    CHECK(parse_scalar_bid("- nothing", lo, hi, OffGridPolicy::RoundHalfUp).error ==
          ParseErrorKind::NoNumber);
  }
}

TEST_CASE("clock action parsing") {
  SECTION("full tag block") {
    auto r = parse_clock_action(
        "<PLAN> stay while cheap </PLAN>\n<ACTION> Yes </ACTION>\n"
        "<REFLECTION> price is below my value </REFLECTION>");
    REQUIRE(r.ok());
    CHECK(r.value->decision == ClockDecision::Stay);
    CHECK(r.value->plan == "stay while cheap");
    CHECK(r.value->reflection == "price is below my value");
  }
  SECTION("exit and case-insensitivity") {
    auto r = parse_clock_action("<action>NO</action>");
    REQUIRE(r.ok());
    CHECK(r.value->decision == ClockDecision::Exit);
  }
  SECTION("failures") {
    CHECK(parse_clock_action("Yes").error == ParseErrorKind::MissingTag);
    CHECK(parse_clock_action("<ACTION> maybe </ACTION>").error == ParseErrorKind::BadAction);
  }
}

TEST_CASE("ebay action parsing") {
  const Money lo{0}, hi{99};
  SECTION("bid with amount") {
    auto r = parse_ebay_action(
        "<PLAN> snipe later </PLAN>\n<CHECK> last 40 </CHECK>\n"
        "<ACTION> BID </ACTION>\n<AMOUNT> 55 </AMOUNT>",
        lo, hi, Money{40}, OffGridPolicy::RoundHalfUp);
    REQUIRE(r.ok());
    CHECK_FALSE(r.value->hold);
    CHECK(r.value->amount == Money{55});
    CHECK(r.value->plan == "snipe later");
  }
  SECTION("hold") {
    auto r = parse_ebay_action("<ACTION> HOLD </ACTION>\n<AMOUNT> 0 </AMOUNT>", lo, hi,
                               std::nullopt, OffGridPolicy::RoundHalfUp);
    REQUIRE(r.ok());
    CHECK(r.value->hold);
  }
  SECTION("hold with a nonzero amount is confused") {
    CHECK(parse_ebay_action("<ACTION> HOLD </ACTION>\n<AMOUNT> 55 </AMOUNT>", lo, hi,
                            std::nullopt, OffGridPolicy::RoundHalfUp)
              .error == ParseErrorKind::AmountMismatch);
  }
  SECTION("bid failures") {
    CHECK(parse_ebay_action("<ACTION> BID </ACTION>", lo, hi, std::nullopt,
                            OffGridPolicy::RoundHalfUp)
              .error == ParseErrorKind::MissingTag);
    CHECK(parse_ebay_action("<ACTION> BID </ACTION>\n<AMOUNT> 0 </AMOUNT>", lo, hi,
                            std::nullopt, OffGridPolicy::RoundHalfUp)
              .error == ParseErrorKind::AmountMismatch);
    CHECK(parse_ebay_action("<ACTION> BID </ACTION>\n<AMOUNT> 300 </AMOUNT>", lo, hi,
                            std::nullopt, OffGridPolicy::RoundHalfUp)
              .error == ParseErrorKind::OutOfRange);
    CHECK(parse_ebay_action("<ACTION> BID </ACTION>\n<AMOUNT> 30 </AMOUNT>", lo, hi, Money{40},
                            OffGridPolicy::RoundHalfUp)
              .error == ParseErrorKind::AmountMismatch);
    CHECK(parse_ebay_action("<ACTION> BUY </ACTION>\n<AMOUNT> 30 </AMOUNT>", lo, hi,
                            std::nullopt, OffGridPolicy::RoundHalfUp)
              .error == ParseErrorKind::BadAction);
  }
  SECTION("fractional amount rounds under the default policy") {
    auto r = parse_ebay_action("<ACTION> BID </ACTION>\n<AMOUNT> 55.5 </AMOUNT>", lo, hi,
                               std::nullopt, OffGridPolicy::RoundHalfUp);
    REQUIRE(r.ok());
    CHECK(r.value->amount == Money{56});
    CHECK(r.value->corrected);
    CHECK(parse_ebay_action("<ACTION> BID </ACTION>\n<AMOUNT> 55.5 </AMOUNT>", lo, hi,
                            std::nullopt, OffGridPolicy::Strict)
              .error == ParseErrorKind::OffGrid);
  }
}
