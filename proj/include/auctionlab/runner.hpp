#pragma once

// Experiment orchestration: the plan-bid-reflect loop for sealed formats,
// the clock-cycle loop, and the eBay day loop, plus transcript persistence.
// Transcripts carry no wall-clock data, so (config, seed, completion cache)
// determine every byte.

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "auctionlab/agents/agent.hpp"
#include "auctionlab/agents/prompts.hpp"
#include "auctionlab/config.hpp"
#include "auctionlab/environment.hpp"
#include "auctionlab/gateway.hpp"
#include "auctionlab/mechanisms/clock.hpp"
#include "auctionlab/mechanisms/ebay.hpp"
#include "auctionlab/mechanisms/sealed.hpp"
#include "auctionlab/types.hpp"

namespace auctionlab {

constexpr int kTranscriptSchemaVersion = 1;

struct Transcript {
  ExperimentConfig config;
  std::uint64_t seed = 0;
  std::string experiment_id;
  int schema_version = kTranscriptSchemaVersion;
  std::optional<std::string> cache_reference;
  std::vector<RoundRecord> rounds;
  bool aborted = false;
  std::optional<std::string> abort_reason;
  bool partial = false;  // set by the reader when the file was truncated
};

// ---- persistence ----------------------------------------------------------

inline nlohmann::json transcript_header_json(const Transcript& t) {
  nlohmann::json h;
  h["schema_version"] = t.schema_version;
  h["experiment_id"] = t.experiment_id;
  h["seed"] = t.seed;
  h["config"] = to_json(t.config);
  if (t.cache_reference) h["cache"] = *t.cache_reference;
  h["aborted"] = t.aborted;
  if (t.abort_reason) h["abort_reason"] = *t.abort_reason;
  return h;
}

/// Streams a transcript as JSON Lines, flushing after every round so an
/// aborted run keeps everything settled so far.
class TranscriptWriter {
 public:
  TranscriptWriter() = default;
  explicit TranscriptWriter(std::string path) : path_(std::move(path)) {}

  bool active() const { return !path_.empty(); }

  void write_header(const Transcript& t) {
    if (!active()) return;
    out_.open(path_, std::ios::trunc);
    if (!out_) throw std::runtime_error("TranscriptWriter: cannot open " + path_);
    out_ << transcript_header_json(t).dump() << "\n";
    out_.flush();
  }

  void write_round(const RoundRecord& r) {
    if (!active()) return;
    out_ << to_json(r).dump() << "\n";
    out_.flush();
  }

  /// Rewrites the file with a final header (e.g. aborted flag set).
  void finalize(const Transcript& t) {
    if (!active()) return;
    out_.close();
    std::ofstream out(path_, std::ios::trunc);
    out << transcript_header_json(t).dump() << "\n";
    for (const auto& r : t.rounds) out << to_json(r).dump() << "\n";
  }

 private:
  std::string path_;
  std::ofstream out_;
};

inline void write_transcript(const Transcript& t, const std::string& path) {
  TranscriptWriter w(path);
  w.write_header(t);
  for (const auto& r : t.rounds) w.write_round(r);
}

inline Transcript read_transcript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_transcript: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_transcript: empty file " + path);
  nlohmann::json h = nlohmann::json::parse(line);
  const int version = h.at("schema_version").get<int>();
  if (version != kTranscriptSchemaVersion)
    throw std::runtime_error("read_transcript: unsupported schema version " +
                             std::to_string(version));
  Transcript t;
  t.schema_version = version;
  t.experiment_id = h.at("experiment_id").get<std::string>();
  t.seed = h.at("seed").get<std::uint64_t>();
  if (h.contains("cache")) t.cache_reference = h.at("cache").get<std::string>();
  t.aborted = h.value("aborted", false);
  if (h.contains("abort_reason")) t.abort_reason = h.at("abort_reason").get<std::string>();
  auto vr = config_from_json(h.at("config"));
  if (!vr.ok())
    throw std::runtime_error("read_transcript: invalid config snapshot: " + vr.errors.front());
  t.config = *vr.config;

  int expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RoundRecord r;
    try {
      r = round_from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception&) {
      t.partial = true;  // truncated trailing line; keep the complete rounds
      break;
    }
    if (r.round_index != expected)
      throw std::runtime_error("read_transcript: non-contiguous round indices");
    ++expected;
    t.rounds.push_back(std::move(r));
  }
  return t;
}

// ---- history rendering ----------------------------------------------------

/// HISTORY text for `bidder` covering rounds [0, upto). Reconstructed from
/// structured records at prompt time so replay regenerates identical bytes.
inline std::string build_history_text(const Transcript& t, int bidder, std::size_t upto) {
  std::ostringstream os;
  for (std::size_t k = 0; k < upto && k < t.rounds.size(); ++k) {
    const RoundRecord& r = t.rounds[k];
    prompts::HistoryLineInput h;
    h.round_index = r.round_index;
    h.value = r.values[bidder];
    h.bid = r.actions[bidder].payload.value("raw_bid", 0.0);
    h.profit = r.outcome.profits[bidder];
    h.total_profit = r.cumulative_profit[bidder];
    for (const auto& a : r.actions) h.all_bids.push_back(a.payload.value("raw_bid", 0.0));
    h.sale = r.outcome.winner.has_value();
    if (r.outcome.winner) {
      h.winning_bid = r.actions[*r.outcome.winner].payload.value("raw_bid", 0.0);
      h.winner_profit = r.outcome.profits[*r.outcome.winner];
      h.won = *r.outcome.winner == bidder;
    }
    h.preferred_bid = r.outcome.preferred_bid;
    if (k > 0) os << " ";
    os << prompts::build_history_line(h);
  }
  return os.str();
}

// ---- run options ----------------------------------------------------------

struct RunOptions {
  Gateway* gateway = nullptr;          // required when any agent is llm
  std::optional<double> budget;        // dollars; absent = unlimited
  std::string experiment_id = "exp";
  std::string out_path;                // empty = do not write a file
  int max_parse_retries = 2;
};

namespace detail {

inline double projected_call_cost(const Gateway* g) {
  if (!g || g->ledger().total_calls == 0) return 0.0;
  return g->ledger().total_cost / static_cast<double>(g->ledger().total_calls);
}

inline void check_budget(const RunOptions& opt) {
  if (!opt.gateway || !opt.budget) return;
  if (!budget_guard(opt.gateway->ledger(), opt.budget, projected_call_cost(opt.gateway)))
    throw GatewayError(GatewayError::Kind::Config, "budget limit reached");
}

inline void set_llm_context(Agent& a, const std::string& experiment_id, int round) {
  if (a.is_llm())
    static_cast<LLMAgent&>(a).set_context(experiment_id + " round " + std::to_string(round));
}

}  // namespace detail

// ---- sealed ---------------------------------------------------------------

inline Transcript run_sealed_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
  Transcript t;
  t.config = cfg;
  t.seed = cfg.rng_seed;
  t.experiment_id = opt.experiment_id;
  RngRoot rng(cfg.rng_seed);
  auto agents = make_agents(cfg, opt.gateway, rng, opt.max_parse_retries);
  const int n = cfg.num_bidders;

  TranscriptWriter writer(opt.out_path);
  writer.write_header(t);

  std::vector<Rational> cumulative(n, Rational(0));
  std::vector<std::string> last_reflection(n);
  const bool cot = cfg.chain_of_thought;

  try {
    for (int k = 0; k < cfg.num_rounds; ++k) {
      detail::check_budget(opt);
      RoundRecord rec;
      rec.round_index = k;

      rec.plans.assign(n, "");
      for (int i = 0; i < n; ++i) {
        detail::set_llm_context(*agents[i], opt.experiment_id, k);
        if (cot)
          rec.plans[i] = agents[i]->plan(k, build_history_text(t, i, k), last_reflection[i]);
      }

      auto value_rng = rng.stream("values", static_cast<std::uint64_t>(k));
      const ValueDraw draw = draw_values(cfg.environment, n, value_rng);
      rec.values = draw.values;
      rec.cv_common_value = cfg.environment.kind == EnvKind::CV ? draw.common_component
                                                                : std::nullopt;

      std::vector<Money> bids(n);
      rec.actions.resize(n);
      for (int i = 0; i < n; ++i) {
        const SealedDecision d = agents[i]->sealed_bid(draw.values[i], rec.plans[i]);
        bids[i] = d.bid;
        rec.actions[i].payload = {{"bid", d.bid.units},
                                  {"raw_bid", d.raw_bid},
                                  {"corrected", d.corrected},
                                  {"parse_retries", d.parse_retries},
                                  {"fallback", d.fallback}};
      }

      auto tie_rng = rng.stream("ties", static_cast<std::uint64_t>(k));
      rec.outcome = cfg.environment.kind == EnvKind::CV
                        ? settle_sealed_cv(cfg.mechanism, bids, draw, tie_rng)
                        : settle_sealed(cfg.mechanism, bids, draw, tie_rng);

      for (int i = 0; i < n; ++i) cumulative[i] = cumulative[i] + rec.outcome.profits[i];
      rec.cumulative_profit = cumulative;

      t.rounds.push_back(rec);  // history for reflection includes this round

      rec.reflections.assign(n, "");
      if (cot && k + 1 < cfg.num_rounds) {
        for (int i = 0; i < n; ++i) {
          rec.reflections[i] = agents[i]->reflect(build_history_text(t, i, k + 1));
          last_reflection[i] = rec.reflections[i];
        }
      }
      t.rounds.back().reflections = rec.reflections;
      writer.write_round(t.rounds.back());
    }
  } catch (const GatewayError& e) {
    t.aborted = true;
    t.abort_reason = e.what();
  }
  writer.finalize(t);
  return t;
}

// ---- ascending clock ------------------------------------------------------

inline Transcript run_clock_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
  Transcript t;
  t.config = cfg;
  t.seed = cfg.rng_seed;
  t.experiment_id = opt.experiment_id;
  RngRoot rng(cfg.rng_seed);
  auto agents = make_agents(cfg, opt.gateway, rng, opt.max_parse_retries);
  const int n = cfg.num_bidders;

  TranscriptWriter writer(opt.out_path);
  writer.write_header(t);

  std::vector<Rational> cumulative(n, Rational(0));

  try {
    for (int k = 0; k < cfg.num_rounds; ++k) {
      detail::check_budget(opt);
      RoundRecord rec;
      rec.round_index = k;

      auto value_rng = rng.stream("values", static_cast<std::uint64_t>(k));
      const ValueDraw draw = draw_values(cfg.environment, n, value_rng);
      rec.values = draw.values;

      ClockState state = make_clock_state(cfg.mechanism, n);
      auto tie_rng = rng.stream("ties", static_cast<std::uint64_t>(k));

      std::vector<nlohmann::json> ticks_by_bidder(n);
      for (int i = 0; i < n; ++i) ticks_by_bidder[i] = nlohmann::json::array();

      std::optional<Outcome> outcome;
      while (!outcome) {
        const std::string obs = clock_observation(state);
        std::map<int, ClockDecision> decisions;
        for (int i : state.active) {
          detail::set_llm_context(*agents[i], opt.experiment_id, k);
          const ClockDecisionResult d =
              agents[i]->clock_decide(draw.values[i], state.current_price, obs);
          decisions[i] = d.decision;
          nlohmann::json tick = {{"price", state.current_price.units},
                                 {"stay", d.decision == ClockDecision::Stay},
                                 {"fallback", d.fallback},
                                 {"parse_retries", d.parse_retries}};
          if (!d.plan.empty()) tick["plan"] = d.plan;
          if (!d.reflection.empty()) tick["reflection"] = d.reflection;
          ticks_by_bidder[i].push_back(tick);
        }
        outcome = clock_tick(state, decisions, cfg.mechanism, draw, tie_rng);
      }

      rec.actions.resize(n);
      for (int i = 0; i < n; ++i) {
        std::optional<Money> dropout;
        for (const auto& [p, b] : state.dropout_log)
          if (b == i) dropout = p;
        nlohmann::json a = {{"ticks", ticks_by_bidder[i]}};
        // The winner's drop-out price is never observed.
        if (dropout && (!outcome->winner || *outcome->winner != i)) {
          a["dropout_price"] = dropout->units;
          a["raw_bid"] = static_cast<double>(dropout->units);
        } else {
          a["dropout_price"] = nullptr;
        }
        rec.actions[i].payload = a;
      }

      rec.outcome = *outcome;
      for (int i = 0; i < n; ++i) cumulative[i] = cumulative[i] + rec.outcome.profits[i];
      rec.cumulative_profit = cumulative;
      rec.plans.assign(n, "");
      rec.reflections.assign(n, "");

      nlohmann::json log = nlohmann::json::array();
      for (const auto& [p, b] : state.dropout_log) log.push_back({{"price", p.units}, {"bidder", b}});
      rec.extra = {{"dropout_log", log}, {"broadcast", state.broadcast}};

      t.rounds.push_back(std::move(rec));
      writer.write_round(t.rounds.back());
    }
  } catch (const GatewayError& e) {
    t.aborted = true;
    t.abort_reason = e.what();
  }
  writer.finalize(t);
  return t;
}

// ---- ebay -----------------------------------------------------------------

namespace detail {

inline std::string ebay_ordering_line(const std::vector<int>& ordering) {
  std::ostringstream os;
  os << "Today the bidding order is: ";
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (i > 0) os << ", then ";
    os << "Bidder " << default_bidder_name(ordering[i]);
  }
  return os.str();
}

inline std::string ebay_previous_bids(const std::vector<Money>& own_history) {
  if (own_history.empty()) return "None";
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < own_history.size(); ++i) {
    if (i > 0) os << ", ";
    os << own_history[i].units;
  }
  os << "]";
  return os.str();
}

}  // namespace detail

inline Transcript run_ebay_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
  Transcript t;
  t.config = cfg;
  t.seed = cfg.rng_seed;
  t.experiment_id = opt.experiment_id;
  RngRoot rng(cfg.rng_seed);
  auto agents = make_agents(cfg, opt.gateway, rng, opt.max_parse_retries);
  const int n = cfg.num_bidders;

  TranscriptWriter writer(opt.out_path);
  writer.write_header(t);

  std::vector<Rational> cumulative(n, Rational(0));

  try {
    for (int k = 0; k < cfg.num_rounds; ++k) {
      detail::check_budget(opt);
      RoundRecord rec;
      rec.round_index = k;

      auto value_rng = rng.stream("values", static_cast<std::uint64_t>(k));
      const ValueDraw draw = draw_values(cfg.environment, n, value_rng);
      rec.values = draw.values;

      auto perm_rng = rng.stream("permutations", static_cast<std::uint64_t>(k));
      EbayState state = make_ebay_state(cfg.mechanism, n, perm_rng);
      const int total_periods = *cfg.mechanism.num_periods;

      std::vector<nlohmann::json> days_by_bidder(n);
      std::vector<std::vector<Money>> bid_history(n);
      for (int i = 0; i < n; ++i) days_by_bidder[i] = nlohmann::json::array();

      while (!state.closed) {
        const int day = state.day;
        const bool final_day = day >= state.horizon;
        const std::vector<int> ordering = state.ordering;
        const std::optional<int> leader_before = state.leader;

        auto observe = [&](int i) {
          EbayObservation obs;
          obs.value = draw.values[i];
          obs.total_periods = total_periods;
          obs.current_period = day;
          obs.horizon = state.horizon;
          obs.ordering_line = detail::ebay_ordering_line(ordering);
          obs.previous_bids = detail::ebay_previous_bids(bid_history[i]);
          obs.transcript = ebay_price_transcript(state);
          obs.current_price = state.current_price;
          obs.last_bid = state.max_bids[i];
          return obs;
        };

        auto record_action = [&](int i, const EbayDecisionResult& d, bool applied) {
          nlohmann::json a = {{"day", day},
                              {"action", d.hold ? "hold" : "bid"},
                              {"fallback", d.fallback},
                              {"parse_retries", d.parse_retries}};
          if (!d.hold) {
            a["amount"] = d.amount.units;
            a["applied"] = applied;
            if (d.corrected) a["raw_amount"] = d.raw_amount;
          }
          if (!d.plan.empty()) a["plan"] = d.plan;
          days_by_bidder[i].push_back(a);
        };

        auto apply = [&](int i, const EbayDecisionResult& d) {
          bool applied = false;
          if (!d.hold) {
            applied = ebay_apply_max_bid(state, i, d.amount, cfg.mechanism) ==
                      EbayBidError::None;
            if (applied &&
                (bid_history[i].empty() || bid_history[i].back() != d.amount))
              bid_history[i].push_back(d.amount);
          }
          record_action(i, d, applied);
        };

        if (final_day) {
          // Simultaneous: everyone decides against the same snapshot, then
          // bids land in permutation order.
          std::vector<std::pair<int, EbayDecisionResult>> staged;
          for (int i : ordering) {
            detail::set_llm_context(*agents[i], opt.experiment_id, k);
            staged.emplace_back(i, agents[i]->ebay_decide(observe(i)));
          }
          for (auto& [i, d] : staged) apply(i, d);
        } else {
          for (int i : ordering) {
            detail::set_llm_context(*agents[i], opt.experiment_id, k);
            apply(i, agents[i]->ebay_decide(observe(i)));
          }
        }

        const bool new_leader = final_day && state.leader != leader_before;
        ebay_advance_period(state, new_leader, cfg.mechanism, perm_rng);
      }

      rec.outcome = ebay_outcome(state, draw.values);
      rec.actions.resize(n);
      for (int i = 0; i < n; ++i) {
        nlohmann::json a = {{"days", days_by_bidder[i]}};
        if (state.max_bids[i]) {
          a["max_bid"] = state.max_bids[i]->units;
          a["raw_bid"] = static_cast<double>(state.max_bids[i]->units);
        } else {
          a["max_bid"] = nullptr;
        }
        rec.actions[i].payload = a;
      }

      for (int i = 0; i < n; ++i) cumulative[i] = cumulative[i] + rec.outcome.profits[i];
      rec.cumulative_profit = cumulative;
      rec.plans.assign(n, "");
      rec.reflections.assign(n, "");

      const auto fwbt = final_winning_bid_time(state);
      rec.extra = {{"final_winning_bid_time", fwbt ? nlohmann::json(*fwbt) : nlohmann::json()},
                   {"price_transcript", ebay_price_transcript(state)},
                   {"extensions", state.extensions},
                   {"final_horizon", state.horizon},
                   {"reserve_met", !state.reserve || state.reserve_met}};

      t.rounds.push_back(std::move(rec));
      writer.write_round(t.rounds.back());
    }
  } catch (const GatewayError& e) {
    t.aborted = true;
    t.abort_reason = e.what();
  }
  writer.finalize(t);
  return t;
}

/// Dispatch by family. Config must already be validated.
inline Transcript run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
  switch (cfg.mechanism.family) {
    case Family::AscendingClock:
      return run_clock_experiment(cfg, opt);
    case Family::EbayProxy:
      return run_ebay_experiment(cfg, opt);
    default:
      return run_sealed_experiment(cfg, opt);
  }
}

}  // namespace auctionlab
