#pragma once

// Prompt corpus and renderers. The rule texts are fixed strings with
// {{placeholder}} slots; substitution of an unbound placeholder, or a
// leftover slot after substitution, is a hard error so template drift
// cannot silently change an experiment.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "auctionlab/config.hpp"
#include "auctionlab/money.hpp"
#include "auctionlab/types.hpp"

namespace auctionlab::prompts {

// ---- number formatting ----------------------------------------------------

/// Bids and profits are echoed with one decimal ("86.0", "36.5"); values are
/// echoed as plain integers.
inline std::string format_amount(double x) {
  if (x == std::floor(x) && std::fabs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", x);
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

inline std::string format_amount(const Rational& r) {
  return format_amount(static_cast<double>(r.num) / static_cast<double>(r.den));
}

inline std::string format_amount(Money m) { return format_amount(static_cast<double>(m.units)); }

// ---- template substitution ------------------------------------------------

/// Replaces every {{key}} with vars.at(key). Throws when the template names
/// a variable that is not bound, or when a bound variable goes unused is
/// fine; leftovers are not.
inline std::string substitute(const std::string& templ,
                              const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(templ.size());
  std::size_t pos = 0;
  while (pos < templ.size()) {
    const std::size_t open = templ.find("{{", pos);
    if (open == std::string::npos) {
      out.append(templ, pos, std::string::npos);
      break;
    }
    out.append(templ, pos, open - pos);
    const std::size_t close = templ.find("}}", open + 2);
    if (close == std::string::npos)
      throw std::invalid_argument("substitute: unterminated placeholder");
    const std::string key = templ.substr(open + 2, close - open - 2);
    auto it = vars.find(key);
    if (it == vars.end())
      throw std::invalid_argument("substitute: unbound placeholder '" + key + "'");
    out += it->second;
    pos = close + 2;
  }
  return out;
}

// ---- fixed instruction texts ----------------------------------------------

inline const char* instructions_text(bool one_shot) {
  if (one_shot)
    return "Your top priority is to place a bid that maximizes your expected profit.";
  return "Your TOP PRIORITY is to place bids which maximize the user's profit in the long run. "
         "To do this, you should explore many different bidding strategies, including possibly "
         "risky or aggressive options for data-gathering purposes. Learn from the history of "
         "previous rounds in order to maximize your total profit. Don't forget the values are "
         "redrawn independently each round.";
}

// ---- rule explanation corpus ----------------------------------------------

namespace detail {

inline const char* kFpsbIpv =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between $0 and ${{private}}, with all values equally likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between $0 and ${{private}} in ${{increment}} increments.\n"
    "The highest bidder wins the prize and pays their bid amount. If you win, your earnings will "
    "increase by your value for the prize, and decrease by your bid. If you don't win, your "
    "earnings will remain unchanged.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

inline const char* kSpsbIpv =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between $0 and ${{private}}, with all values equally likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between $0 and ${{private}} in ${{increment}} increments.\n"
    "The highest bidder wins the prize and pays the second-highest bid. If you win, your earnings "
    "will increase by your value for the prize, and decrease by the second-highest bid. If you "
    "don't win, your earnings will remain unchanged.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

inline const char* kTpsbIpv =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between $0 and ${{private}}, with all values equally likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between $0 and ${{private}} in ${{increment}} increments.\n"
    "The highest bidder wins the prize and pays the third-highest bid. If you win, your earnings "
    "will increase by your value for the prize, and decrease by the third-highest bid. If you "
    "don't win, your earnings will remain unchanged. If there are less than three bids, no one "
    "will win the auction.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

inline const char* kAllPayIpv =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between $0 and ${{private}}, with all values equally likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between $0 and ${{private}} in ${{increment}} increments.\n"
    "The highest bidder wins the prize. All bidders (including the winner) pay their submitted "
    "bid. If you win, your earnings will increase by your value for the prize, and decrease by "
    "your bid. If you don't win, your earnings will still decrease by your bid.\n"
    "After each auction, we will display all bids and all bidders' profits. Ties for the highest "
    "bid will be resolved randomly.";

inline const char* kApvPreamble =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize. Your value for the "
    "prize will be calculated as follows:\n"
    "1. First we will randomly draw a common value between {{common_low}} and {{common_high}}, "
    "with all values equally likely.\n"
    "2. Then, for each bidder, a private taste adjustment will be drawn between 0 and "
    "{{private}}, with all values equally likely.\n"
    "Your value for the prize is equal to the common value plus your private taste adjustment. "
    "You will not learn the common value or your private taste adjustment separately. This means "
    "that each person in your group may have a different value for the prize. However, if you "
    "have a high value, it is more likely that other people in your group have a high value.\n";

inline std::string apv_spsb() {
  return std::string(kApvPreamble) +
         "After learning your value, you will submit a bid privately at the same time as the "
         "other bidders. Bids must be between $0 and ${{common_high + private}} in "
         "${{increment}} increments.\n"
         "The highest bidder wins the prize and pays the second-highest bid. If you win, your "
         "earnings will increase by your value for the prize, and decrease by the second-highest "
         "bid. If you don't win, your earnings will remain unchanged.\n"
         "After each auction, we will display all bids and the winner's profits. Ties for the "
         "highest bid will be resolved randomly.";
}

inline std::string apv_clock(bool broadcast) {
  std::string s(kApvPreamble);
  s += "The auction proceeds as follows: First, you will learn your value for the prize. Then, "
       "the auction will start. We will display a price to everyone in your group that starts at "
       "0 and counts upwards in {{increment}} USD increments, up to a maximum of "
       "{{common_high + private}}. ";
  if (broadcast)
    s += "At any point, you can choose to leave the auction, and anytime a bidder leaves, we "
         "will broadcast that information to all the remaining bidders.\n";
  else
    s += "At any point, you can choose to leave the auction, but we will not tell any bidder "
         "when someone leaves.\n";
  s += "When there is only one bidder left in the auction, that bidder will win the prize at the "
       "current price. If you win, your earnings will increase by your value for the prize, and "
       "decrease by the current price. If you don't win, your earnings will remain unchanged.\n"
       "After each auction, we will display all bids and the winner's profits. Ties for the "
       "highest bid will be resolved randomly.";
  return s;
}

inline const char* kCvSpsb =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their perceived value for the prize - a noisy "
    "measurement of the true value of the prize. Your perceived value for the prize will be "
    "calculated as follows:\n"
    "1. For each round, a common value will be drawn between {{common_low}} and {{common_high}}, "
    "with all values equally likely to be drawn.\n"
    "2. For each person, a private noisy adjustment will be drawn between -{{private}} and "
    "{{private}}, with all values equally likely to be drawn.\n"
    "We will tell you your perceived value, the sum of the common value and the private noise "
    "adjustment. However, everyone's true value for the prize is equal to the shared common "
    "value.\n"
    "After learning your perceived value, you will submit a bid privately at the same time as "
    "the other bidders. Bids must be between $0 and ${{common_high + private}} in "
    "${{increment}} increments.\n"
    "The highest bidder wins the prize and pays the second-highest bid. If you win, your "
    "earnings will increase by the true value for the prize, and decrease by the second-highest "
    "bid. If you don't win, your earnings will remain unchanged.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

inline std::string ebay_rules(bool closing_rule, bool hidden_reserve) {
  std::string s =
      "In this game, you will participate in an eBay auction for an item against "
      "{{num_bidders}} other bidders. This auction will last for {{num_rounds}} days. All "
      "dollar amounts in this game are in US Dollars ($).\n\n"
      "Item Details:\n"
      "Item Description: {{item_description}}\n"
      "Item Condition: {{item_condition}}\n"
      "Your Private Value: At the start of each round, bidders will see their value for the "
      "item, randomly drawn between $0 and ${{private}}, with all values equally likely. After "
      "learning your value for the item, you will submit a maximum bid. Bids must be between $0 "
      "and ${{private}} in ${{increment}} increments.\n\n"
      "Auction Format:\n";
  if (closing_rule && hidden_reserve)
    s += "This is an eBay auction with a hidden reserve price and a closing rule. ";
  else if (closing_rule)
    s += "This is an eBay auction with a closing rule. ";
  else if (hidden_reserve)
    s += "This is an eBay auction with a hidden reserve price. ";
  else
    s += "This is an eBay auction. ";
  s += "The auction starts at ${{start_price}} and will last for {{num_rounds}} days. eBay uses "
       "\"proxy bidding.\" This means that if you wish to enter the auction, you should submit "
       "your maximum bid, and eBay will automatically bid on your behalf, up to your maximum, "
       "only as much as necessary to maintain your position as the highest bidder. Each day you "
       "will see the current price and have the opportunity to increase your maximum bid. If you "
       "do not want to increase your maximum bid, then output HOLD.\n\n";
  if (hidden_reserve) {
    s += "You may place bids at any point during the auction, even on the final day. However, if "
         "no bidder produces a maximum bid above the hidden reserve price, the seller will "
         "retain the good and the bidders will be informed that there is currently no bidder in "
         "the lead.";
    if (!closing_rule) s += " No bidder will know if they (or anyone else) is the final bidder on the last day.";
    s += "\n\n";
  } else if (!closing_rule) {
    s += "You may place bids at any point during the auction, even on the final day. No bidder "
         "will know if they (or anyone else) is the last bidder on the final day.\n\n";
  }
  if (closing_rule) {
    s += "This auction also has a closing rule. This means that if a new maximum bid is placed "
         "on the last day, the auction will automatically extend by another day. This extension "
         "will continue to be applied as long as new maximum bids are placed on the final day. "
         "No bidder will know if they (or anyone else) is the last bidder on the final day.\n\n";
  }
  if (hidden_reserve)
    s += "If the reserve is met, the highest bidder wins the prize and pays the auction price at "
         "the time the auction's clock expired. ";
  else
    s += "The highest bidder wins the prize and pays the auction price at the time the "
         "auction's clock expired. ";
  s += "If you win, your earnings will increase by your value for the prize, and decrease by the "
       "final auction price. If you don't win, your earnings will remain unchanged. Ties for the "
       "highest bid will be resolved randomly.";
  return s;
}

inline const char* kCurrencyFpsb =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between {{currency symbol}} 0 and {{currency symbol}}{{private}}, with all values equally "
    "likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between {{currency symbol}}0 and {{currency symbol}}{{private}} in "
    "{{currency symbol}}{{increment}} increments.\n"
    "The highest bidder wins the prize and pays their bid amount. This means that, if you win, "
    "we will add to your earnings the value for the prize, and subtract from your earnings your "
    "bid. If you don't win, your earnings remain unchanged.\n"
    "After each auction, we will display all bids and profits. Ties for the highest bid will be "
    "resolved randomly.";

inline const char* kCurrencySpsb =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between {{currency symbol}}0 and {{currency symbol}}{{private}}, with all values equally "
    "likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between {{currency symbol}}0 and {{currency symbol}}{{private}} in "
    "{{currency symbol}}{{increment}} increments.\n"
    "The highest bidder wins the prize and pays the second-highest bid. This means that, if you "
    "win, we will add to your earnings the value for the prize, and subtract from your earnings "
    "the second-highest bid. If you don't win, your earnings remain unchanged.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

// Intervention treatments on the SPSB auction. The first five swap in a
// replacement rule text; the risk treatment appends a behavioral prime to
// the standard rules.

inline const char* kMenuIntervention =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between $0 and ${{private}}, with all values equally likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between $0 and ${{private}} in ${{increment}} increments.\n"
    "Your \"price to win\" the item will be set to the highest bid placed by any other player. "
    "If your bid is higher than this \"price to win,\" then you will win the item and pay this "
    "price. If you don't win, your earnings will remain unchanged.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

inline const char* kProxyIntervention =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between $0 and ${{private}}, with all values equally likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between $0 and ${{private}} in ${{increment}} increments.\n"
    "**FIRST STAGE: Sealed Bid**\n"
    "You will submit a sealed bid privately at the same time as the other bidders. This bid will "
    "serve as your automatic exit price in the next stage.\n"
    "**SECOND STAGE: Ascending Clock (Simulation)**\n"
    "After the sealed bid stage, we will simulate an ascending clock auction.\n"
    "The clock will start at $0 and increase in increments of ${{increment}}.\n"
    "The clock will display the current price. You will also see that there are a total of "
    "{{num bidders}} bidders participating, although you do not know other bidder's values.\n"
    "If the current price on the clock reaches or exceeds your sealed bid from the first stage, "
    "you will automatically exit the auction. The auction ends when only one bidder is left "
    "remaining in the second stage based on their bid from the first stage.\n"
    "**END OF AUCTION**\n"
    "If you win, your earnings will increase by your value for the prize and decrease by the "
    "clock price at the end of the auction. If you don't win, your earnings will remain "
    "unchanged.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

inline const char* kNashIntervention =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between $0 and ${{private}}, with all values equally likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between $0 and ${{private}} in ${{increment}} increments.\n"
    "The highest bidder wins the prize and pays the second-highest bid. If you win, your "
    "earnings will increase by your value for the prize, and decrease by the second-highest bid. "
    "If you don't win, your earnings will remain unchanged.\n"
    "First, come up with a possible bid given your value. Then, think through your bidding "
    "strategy step by step. How do you expect others to bid? If others bid like this and you bid "
    "down, what happens? If others bid like this and you bid up, what happens?\n"
    "Think through all the ways you could deviate from your current bidding strategy, and settle "
    "on the best possible strategy. Then return your bid.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

inline const char* kDominantIntervention =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between $0 and ${{private}}, with all values equally likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between $0 and ${{private}} in ${{increment}} increments.\n"
    "The highest bidder wins the prize and pays the second-highest bid. If you win, your "
    "earnings will increase by the value for the prize, and decrease by the second-highest bid. "
    "If you don't win, your earnings will remain unchanged.\n"
    "Economists have studied this game and they've found that the dominant strategy - always the "
    "right thing to do whatever the bids of others - of this game is to bid your value. Consider "
    "if they might be right, and then generate your bidding strategy.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

inline const char* kWrongIntervention =
    "In this game, you will participate in an auction for a prize against {{num_bidders}} other "
    "bidders. You will play this game for {{n}} rounds.\n"
    "At the start of each round, bidders will see their value for the prize, randomly drawn "
    "between $0 and ${{private}}, with all values equally likely.\n"
    "After learning your value, you will submit a bid privately at the same time as the other "
    "bidders. Bids must be between $0 and ${{private}} in ${{increment}} increments.\n"
    "The highest bidder wins the prize and pays the second-highest bid. If you win, your "
    "earnings will increase by the value for the prize, and decrease by the second-highest bid. "
    "If you don't win, your earnings will remain unchanged.\n"
    "Economists have studied this game and they've found that the dominant strategy - always the "
    "right thing to do whatever the bids of others - of this game is to bid 50% your value. "
    "Consider if they might be right, and then generate your bidding strategy.\n"
    "After each auction, we will display all bids and the winner's profits. Ties for the highest "
    "bid will be resolved randomly.";

inline const char* kRiskIntervention =
    "You are neutral about risk. This means that you are the type of person that would pay $5 "
    "for a coin toss where you got $0.00 on tails and $10.00 on heads.";

}  // namespace detail

/// Variable bindings derived from the experiment config. `num_bidders` is
/// the count of opponents, matching the "against N other bidders" phrasing.
inline std::map<std::string, std::string> template_vars(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> v;
  v["num_bidders"] = std::to_string(cfg.num_bidders - 1);
  v["num bidders"] = std::to_string(cfg.num_bidders);
  v["n"] = std::to_string(cfg.num_rounds);
  v["num_rounds"] = std::to_string(cfg.mechanism.num_periods.value_or(cfg.num_rounds));
  v["increment"] = std::to_string(cfg.mechanism.increment.units);
  v["currency symbol"] = cfg.currency_symbol;
  v["common_low"] = std::to_string(cfg.environment.common_low.units);
  v["common_high"] = std::to_string(cfg.environment.common_high.units);
  v["common_high + private"] = std::to_string(cfg.environment.value_high().units);
  v["item_description"] = "256GB IPhone 16 pro";
  v["item_condition"] = "used";
  v["start_price"] = std::to_string(cfg.mechanism.start_price.units);
  switch (cfg.environment.kind) {
    case EnvKind::IPV:
      v["private"] = std::to_string(cfg.environment.ipv_high.units);
      break;
    case EnvKind::APV:
      v["private"] = std::to_string(cfg.environment.private_high.units);
      break;
    case EnvKind::CV:
      v["private"] = std::to_string(cfg.environment.noise_bound.units);
      break;
  }
  return v;
}

/// The rendered rule explanation for this experiment.
inline std::string rule_text(const ExperimentConfig& cfg) {
  if (cfg.rule_text_override) return substitute(*cfg.rule_text_override, template_vars(cfg));

  std::string templ;
  if (cfg.intervention) {
    switch (*cfg.intervention) {
      case InterventionKind::Menu: templ = detail::kMenuIntervention; break;
      case InterventionKind::Proxy: templ = detail::kProxyIntervention; break;
      case InterventionKind::Nash: templ = detail::kNashIntervention; break;
      case InterventionKind::DominantStrategy: templ = detail::kDominantIntervention; break;
      case InterventionKind::WrongStrategy: templ = detail::kWrongIntervention; break;
      case InterventionKind::RiskNeutral:
        templ = std::string(detail::kSpsbIpv) + "\n" + detail::kRiskIntervention;
        break;
    }
    return substitute(templ, template_vars(cfg));
  }

  const bool foreign = cfg.currency_symbol != "$";
  switch (cfg.mechanism.family) {
    case Family::FPSB:
      templ = foreign ? detail::kCurrencyFpsb : detail::kFpsbIpv;
      break;
    case Family::SPSB:
      if (foreign) templ = detail::kCurrencySpsb;
      else if (cfg.environment.kind == EnvKind::APV) templ = detail::apv_spsb();
      else if (cfg.environment.kind == EnvKind::CV) templ = detail::kCvSpsb;
      else templ = detail::kSpsbIpv;
      break;
    case Family::TPSB:
      templ = detail::kTpsbIpv;
      break;
    case Family::AllPay:
      templ = detail::kAllPayIpv;
      break;
    case Family::AscendingClock:
      templ = detail::apv_clock(cfg.mechanism.broadcast_dropouts);
      break;
    case Family::EbayProxy:
      templ = detail::ebay_rules(cfg.mechanism.closing_rule.value_or(false),
                                 cfg.mechanism.hidden_reserve.has_value());
      break;
  }
  if (foreign && cfg.mechanism.family != Family::FPSB && cfg.mechanism.family != Family::SPSB)
    throw std::invalid_argument("rule_text: currency variants exist for fpsb and spsb only");
  return substitute(templ, template_vars(cfg));
}

// ---- history briefing -----------------------------------------------------

struct HistoryLineInput {
  int round_index = 0;
  Money value{0};
  double bid = 0.0;            // the bidder's own raw bid as submitted
  Rational profit{0};
  Rational total_profit{0};
  std::vector<double> all_bids;
  std::optional<double> winning_bid;
  std::optional<Money> preferred_bid;  // FPSB counterfactual
  Rational winner_profit{0};
  bool won = false;
  bool sale = true;
};

inline std::string build_history_line(const HistoryLineInput& h) {
  std::ostringstream os;
  os << "In round " << h.round_index << ", Your value was " << h.value.units << ", you bid "
     << format_amount(h.bid) << ", and your profit was " << format_amount(h.profit)
     << ". Your total profit is " << format_amount(h.total_profit)
     << ". All the bids for this round were ";
  for (std::size_t i = 0; i < h.all_bids.size(); ++i) {
    if (i > 0) os << ", ";
    os << format_amount(h.all_bids[i]);
  }
  os << ". ";
  if (!h.sale || !h.winning_bid) {
    os << "No one won the auction.";
  } else {
    os << "The highest bidder won with a bid of " << format_amount(*h.winning_bid);
    if (h.preferred_bid)
      os << " and would've preferred to bid " << h.preferred_bid->units;
    os << ". The winner's profit was " << format_amount(h.winner_profit) << ".";
  }
  os << " Did you win the auction: " << (h.won ? "Yes" : "No") << ".";
  return os.str();
}

// ---- stage prompts --------------------------------------------------------

inline std::string roster_header(int bidder_index, int n) {
  std::ostringstream os;
  os << "You are Bidder " << default_bidder_name(bidder_index) << ".\n";
  os << "You are bidding with ";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (i == bidder_index) continue;
    if (!first) os << ", ";
    os << "Bidder " << default_bidder_name(i);
    first = false;
  }
  os << ".\n\n";
  return os.str();
}

inline std::string preamble(const ExperimentConfig& cfg, int bidder_index) {
  return roster_header(bidder_index, cfg.num_bidders) + rule_text(cfg) + "\n\n" +
         instructions_text(cfg.one_shot) + "\n\n";
}

/// First-round planning prompt.
inline std::string render_plan_prompt(const ExperimentConfig& cfg, int bidder_index) {
  return preamble(cfg, bidder_index) +
         "Write your plans for what bidding strategies to test next. Be detailed and precise "
         "but keep things succinct and don't repeat yourself. Your plan should be within 100 "
         "words.";
}

/// Planning prompt for later rounds, with history and the previous
/// reflection folded in.
inline std::string render_plan_prompt(const ExperimentConfig& cfg, int bidder_index,
                                      const std::string& history, const std::string& reflection) {
  return preamble(cfg, bidder_index) + "The previous round history is: " + history + "\n" +
         "After careful reflection on previous bidding, your analysis for last round is " +
         reflection + ".\n\n" +
         "Learn from your previous rounds, Let's think step by step to make sure we make a good "
         "choice. Write your plans for what bidding strategies to test next. Be detailed and "
         "precise but keep things succinct and don't repeat yourself. LIMIT your plan to 50 "
         "words.";
}

/// Sealed-bid elicitation. The plan clause is omitted when planning was not
/// elicited (chain_of_thought off).
inline std::string render_bid_prompt(const ExperimentConfig& cfg, int bidder_index, Money value,
                                     const std::string& plan) {
  std::string s = preamble(cfg, bidder_index) + "Your value is " + std::to_string(value.units) + ".";
  if (!plan.empty()) s += " Your plan is " + plan + "\nFOLLOW YOUR PLAN.";
  s += "\nHow much would you like to bid?\n"
       "Give your response with a single number and no other texts, e.g. 1, 44";
  return s;
}

inline std::string render_reflect_prompt(const ExperimentConfig& cfg, int bidder_index,
                                         const std::string& history) {
  return preamble(cfg, bidder_index) + "The previous round history is: " + history + "\n\n" +
         "Do a counterfactual analysis of the last round. REMEMBER that your goal is to win the "
         "bid and make higher profits. REMEMBER YOUR PAYMENT IS YOUR BID IF YOU WIN. Let's "
         "think step by step. Start your reflection with 'If I bid down by .., I could... If I "
         "bid up by ..., I could...' LIMIT your OUTPUT within 100 words.";
}

/// Stay/exit elicitation for one clock cycle.
inline std::string render_clock_prompt(const ExperimentConfig& cfg, int bidder_index, Money value,
                                       Money current_price, const std::string& transcript) {
  std::ostringstream os;
  os << preamble(cfg, bidder_index);
  os << "Your value towards to the prize is " << value.units << " in this round.\n";
  os << "The current price in this clock cycle is " << current_price.units << ".\n";
  os << "The price for next clock cycle is "
     << (current_price + cfg.mechanism.increment).units << ".\n\n";
  os << "The previous bidding history is: " << transcript << ".\n\n";
  os << "Do you want to stay in the bidding? If you choose yes, you can keep bidding for next "
        "clock. If you choose No, you will exit and have no chance to re-enter the bidding.\n"
        "Your response must use these EXACT tags below. You must output the ACTION.\n"
        "```\n"
        "<PLAN> [Write your plans for what bidding strategies to test next. Be detailed and "
        "precise but keep things succinct and don't repeat yourself. LIMIT your plan to 50 "
        "words.] </PLAN>\n"
        "<ACTION> Yes or No </ACTION>\n"
        "<REFLECTION> think about how to justify your choice </REFLECTION>\n"
        "```";
  return os.str();
}

/// Daily bid/hold elicitation in the proxy-bid format.
inline std::string render_ebay_prompt(const ExperimentConfig& cfg, int bidder_index, Money value,
                                      int total_periods, int current_period,
                                      const std::string& ordering_line,
                                      const std::string& previous_bids,
                                      const std::string& transcript, Money current_price,
                                      std::optional<Money> last_bid) {
  std::ostringstream os;
  os << preamble(cfg, bidder_index);
  os << "Your private value for this item is $" << value.units
     << ". This is the maximum amount you are willing to pay. Keep this value private.\n";
  os << "There are in total " << total_periods << " days of bidding and this is day "
     << current_period << ".\n";
  os << ordering_line << ".\n\n";
  os << "Your previous bids are " << previous_bids << ". If you have already placed bids, you "
     << "can only increase your bid or hold your current bid.\n";
  os << "The previous proxy bids are: " << transcript << ".\n\n";
  os << "The current price is " << current_price.units << ".\n";
  os << "Your response must use these EXACT tags below. Don't miss the amount.\n"
        "```\n"
        "<PLAN> [Write your plans for what bidding strategies to test next. Be detailed and "
        "precise but keep things succinct and don't repeat yourself. LIMIT your plan to 50 "
        "words.] </PLAN>\n"
        "<CHECK> your last bid is "
     << (last_bid ? std::to_string(last_bid->units) : std::string("None"))
     << ", you cannot bid lower that this value </CHECK>\n"
        "<ACTION> BID or HOLD </ACTION>\n"
        "<AMOUNT> if BID, enter a number here, e.g. 1, 44. If HOLD, enter 0 </AMOUNT>\n"
        "```";
  return os.str();
}

}  // namespace auctionlab::prompts
