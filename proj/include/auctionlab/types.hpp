#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "auctionlab/money.hpp"

namespace auctionlab {

/// Settlement result of one auction round.
struct Outcome {
  std::optional<int> winner;             // bidder index
  std::vector<Money> payments;           // one per bidder
  std::vector<Rational> profits;         // one per bidder, signed
  std::optional<Money> clearing_price;
  std::vector<int> tied_winners;         // audit of the tie-break
  std::optional<Money> preferred_bid;    // FPSB counterfactual

  bool has_sale() const { return winner.has_value(); }
};

/// One bidder's decision trail within a round. `payload` carries the
/// stage-specific detail (sealed bid, clock decisions, ebay day actions).
struct ActionLog {
  nlohmann::json payload = nlohmann::json::object();
};

/// One round of an experiment; the unit of persistence.
struct RoundRecord {
  int round_index = 0;
  std::vector<Money> values;
  std::optional<Money> cv_common_value;
  std::vector<std::string> plans;        // empty strings when not elicited
  std::vector<ActionLog> actions;
  Outcome outcome;
  std::vector<std::string> reflections;  // empty strings when not elicited
  std::vector<Rational> cumulative_profit;
  nlohmann::json extra = nlohmann::json::object();  // format-specific detail (clock log, ebay days)
};

inline nlohmann::json to_json(const Rational& r) {
  if (r.den == 1) return r.num;
  return nlohmann::json{{"num", r.num}, {"den", r.den}};
}

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

inline nlohmann::json to_json(const Outcome& o) {
  nlohmann::json j;
  if (o.winner) j["winner"] = *o.winner;
  else j["winner"] = nullptr;
  nlohmann::json pay = nlohmann::json::array();
  for (auto m : o.payments) pay.push_back(m.units);
  j["payments"] = pay;
  nlohmann::json prof = nlohmann::json::array();
  for (const auto& p : o.profits) prof.push_back(to_json(p));
  j["profits"] = prof;
  if (o.clearing_price) j["clearing_price"] = o.clearing_price->units;
  else j["clearing_price"] = nullptr;
  j["tied_winners"] = o.tied_winners;
  if (o.preferred_bid) j["preferred_bid"] = o.preferred_bid->units;
  return j;
}

inline Outcome outcome_from_json(const nlohmann::json& j) {
  Outcome o;
  if (!j.at("winner").is_null()) o.winner = j.at("winner").get<int>();
  for (const auto& p : j.at("payments")) o.payments.push_back(Money{p.get<std::int64_t>()});
  for (const auto& p : j.at("profits")) o.profits.push_back(rational_from_json(p));
  if (!j.at("clearing_price").is_null())
    o.clearing_price = Money{j.at("clearing_price").get<std::int64_t>()};
  o.tied_winners = j.at("tied_winners").get<std::vector<int>>();
  if (j.contains("preferred_bid")) o.preferred_bid = Money{j.at("preferred_bid").get<std::int64_t>()};
  return o;
}

inline nlohmann::json to_json(const RoundRecord& r) {
  nlohmann::json j;
  j["round_index"] = r.round_index;
  nlohmann::json vals = nlohmann::json::array();
  for (auto v : r.values) vals.push_back(v.units);
  j["values"] = vals;
  if (r.cv_common_value) j["cv_common_value"] = r.cv_common_value->units;
  j["plans"] = r.plans;
  nlohmann::json acts = nlohmann::json::array();
  for (const auto& a : r.actions) acts.push_back(a.payload);
  j["actions"] = acts;
  j["outcome"] = to_json(r.outcome);
  j["reflections"] = r.reflections;
  nlohmann::json cum = nlohmann::json::array();
  for (const auto& p : r.cumulative_profit) cum.push_back(to_json(p));
  j["cumulative_profit"] = cum;
  if (!r.extra.empty()) j["extra"] = r.extra;
  return j;
}

inline RoundRecord round_from_json(const nlohmann::json& j) {
  RoundRecord r;
  r.round_index = j.at("round_index").get<int>();
  for (const auto& v : j.at("values")) r.values.push_back(Money{v.get<std::int64_t>()});
  if (j.contains("cv_common_value"))
    r.cv_common_value = Money{j.at("cv_common_value").get<std::int64_t>()};
  r.plans = j.at("plans").get<std::vector<std::string>>();
  for (const auto& a : j.at("actions")) r.actions.push_back(ActionLog{a});
  r.outcome = outcome_from_json(j.at("outcome"));
  r.reflections = j.at("reflections").get<std::vector<std::string>>();
  for (const auto& p : j.at("cumulative_profit")) r.cumulative_profit.push_back(rational_from_json(p));
  if (j.contains("extra")) r.extra = j.at("extra");
  return r;
}

}  // namespace auctionlab
