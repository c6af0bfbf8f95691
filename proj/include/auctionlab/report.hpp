#pragma once

// Report emission: extracts samples from transcripts and writes one CSV per
// metric plus a JSON summary. Pure functions of the transcripts, so running
// twice produces byte-identical files.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "auctionlab/analysis.hpp"
#include "auctionlab/runner.hpp"

namespace auctionlab {

/// Short treatment label for grouping, e.g. "ebay_proxy+closing_rule+reserve_60".
inline std::string treatment_label(const ExperimentConfig& cfg) {
  std::string s = to_string(cfg.mechanism.family);
  if (cfg.mechanism.family == Family::AscendingClock && !cfg.mechanism.broadcast_dropouts)
    s += "_blind";
  if (cfg.mechanism.closing_rule.value_or(false)) s += "+closing_rule";
  if (cfg.mechanism.hidden_reserve)
    s += "+reserve_" + std::to_string(cfg.mechanism.hidden_reserve->units);
  if (cfg.intervention) s += "+" + to_string(*cfg.intervention);
  s += "_" + to_string(cfg.environment.kind);
  return s;
}

/// Flattens a transcript into (value, bid) observations. Sealed formats use
/// the settled on-grid bid; clock rounds use drop-out prices, omitting the
/// winner whose exit price is unobserved; eBay rounds use final max bids.
inline std::vector<BidSample> extract_bid_samples(const Transcript& t) {
  std::vector<BidSample> out;
  const Family fam = t.config.mechanism.family;
  for (const auto& r : t.rounds) {
    for (int i = 0; i < static_cast<int>(r.values.size()); ++i) {
      const auto& p = r.actions[i].payload;
      BidSample s;
      s.value = r.values[i].units;
      s.bidder = i;
      s.round = r.round_index;
      s.experiment_id = t.experiment_id;
      s.won = r.outcome.winner && *r.outcome.winner == i;
      s.family = fam;
      if (fam == Family::AscendingClock) {
        if (p.contains("dropout_price") && !p.at("dropout_price").is_null())
          s.bid = p.at("dropout_price").get<std::int64_t>();
        else if (!s.won)
          continue;  // fallback-exit bookkeeping gap; skip rather than guess
        else
          s.bid = s.value;  // placeholder, excluded by winner filters
      } else if (fam == Family::EbayProxy) {
        if (!p.contains("max_bid") || p.at("max_bid").is_null()) continue;
        s.bid = p.at("max_bid").get<std::int64_t>();
      } else {
        s.bid = p.at("bid").get<std::int64_t>();
      }
      out.push_back(s);
    }
  }
  return out;
}

/// Seller revenue per round; a no-sale round yields 0.
inline std::vector<double> extract_revenues(const Transcript& t) {
  std::vector<double> out;
  for (const auto& r : t.rounds)
    out.push_back(r.outcome.clearing_price ? static_cast<double>(r.outcome.clearing_price->units)
                                           : 0.0);
  return out;
}

inline std::vector<double> extract_winner_profits(const Transcript& t) {
  std::vector<double> out;
  for (const auto& r : t.rounds)
    if (r.outcome.winner)
      out.push_back(r.outcome.profits[*r.outcome.winner].to_double());
  return out;
}

inline std::vector<std::optional<int>> extract_final_bid_times(const Transcript& t) {
  std::vector<std::optional<int>> out;
  for (const auto& r : t.rounds) {
    if (!r.extra.contains("final_winning_bid_time")) continue;
    const auto& v = r.extra.at("final_winning_bid_time");
    out.push_back(v.is_null() ? std::nullopt : std::optional<int>(v.get<int>()));
  }
  return out;
}

namespace detail {

inline std::string csv_num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
}

}  // namespace detail

/// Runs every applicable metric over a set of transcripts and writes the
/// report directory. Column names are stable interface.
inline nlohmann::json write_analysis_report(const std::vector<Transcript>& transcripts,
                                            const std::string& report_dir) {
  if (transcripts.empty()) throw std::invalid_argument("write_analysis_report: no transcripts");
  std::filesystem::create_directories(report_dir);
  const std::filesystem::path dir(report_dir);
  nlohmann::json summary;

  std::map<std::string, std::vector<BidSample>> samples_by_treatment;
  std::map<std::string, std::vector<double>> revenues_by_treatment;
  std::map<std::string, std::vector<std::optional<int>>> times_by_treatment;
  std::map<int, std::vector<double>> profits_by_n;
  for (const auto& t : transcripts) {
    const std::string label = treatment_label(t.config);
    auto s = extract_bid_samples(t);
    auto& dst = samples_by_treatment[label];
    dst.insert(dst.end(), s.begin(), s.end());
    auto rev = extract_revenues(t);
    auto& rdst = revenues_by_treatment[label];
    rdst.insert(rdst.end(), rev.begin(), rev.end());
    if (t.config.mechanism.family == Family::EbayProxy) {
      auto times = extract_final_bid_times(t);
      auto& tdst = times_by_treatment[label];
      tdst.insert(tdst.end(), times.begin(), times.end());
    }
    auto prof = extract_winner_profits(t);
    auto& pdst = profits_by_n[t.config.num_bidders];
    pdst.insert(pdst.end(), prof.begin(), prof.end());
  }

  // classify.csv: bid-vs-value partition per treatment.
  {
    std::ostringstream os;
    os << "treatment,under_pct,value_pct,over_pct,n\n";
    for (const auto& [label, s] : samples_by_treatment) {
      if (s.empty()) continue;
      const auto c = classify_bids(s);
      os << label << "," << detail::csv_num(c.under_pct) << "," << detail::csv_num(c.value_pct)
         << "," << detail::csv_num(c.over_pct) << "," << c.n << "\n";
      summary["classify"][label] = {{"under_pct", c.under_pct},
                                    {"value_pct", c.value_pct},
                                    {"over_pct", c.over_pct},
                                    {"n", c.n}};
    }
    detail::write_file(dir / "classify.csv", os.str());
  }

  // kendall.csv: bid monotonicity in value.
  {
    std::ostringstream os;
    os << "treatment,tau,p,n\n";
    for (const auto& [label, s] : samples_by_treatment) {
      if (s.size() < 2) continue;
      std::vector<double> v, b;
      for (const auto& x : s) {
        v.push_back(static_cast<double>(x.value));
        b.push_back(static_cast<double>(x.bid));
      }
      try {
        const auto r = kendall_tau_b(v, b);
        os << label << "," << detail::csv_num(r.tau) << "," << detail::csv_num(r.p) << "," << r.n
           << "\n";
        summary["kendall"][label] = {{"tau", r.tau}, {"p", r.p}, {"n", r.n}};
      } catch (const std::invalid_argument&) {
        // degenerate all-tied sample, nothing to report
      }
    }
    detail::write_file(dir / "kendall.csv", os.str());
  }

  // truthfulness.csv: per-format truthful rate and mean |bid - value|.
  {
    std::ostringstream os;
    os << "treatment,truthful_pct,mean_abs_diff,se,n\n";
    for (const auto& [label, s] : samples_by_treatment) {
      if (s.empty()) continue;
      const double rate =
          truthful_rate(s, s.front().family, 1);
      const auto mad = mean_abs_diff(s);
      os << label << "," << detail::csv_num(rate) << "," << detail::csv_num(mad.mean) << ","
         << detail::csv_num(mad.se) << "," << mad.n << "\n";
      summary["truthfulness"][label] = {{"truthful_pct", rate},
                                        {"mean_abs_diff", mad.mean},
                                        {"se", mad.se},
                                        {"n", mad.n}};
    }
    detail::write_file(dir / "truthfulness.csv", os.str());
  }

  // r2_identity.csv: fit against bid = value with over/under decomposition.
  {
    std::ostringstream os;
    os << "treatment,r2,ss_above,ss_below,prop_above,prop_below,n\n";
    for (const auto& [label, s] : samples_by_treatment) {
      if (s.empty()) continue;
      try {
        const auto r = r2_identity_decomposition(s);
        os << label << "," << detail::csv_num(r.r2) << "," << detail::csv_num(r.ss_above) << ","
           << detail::csv_num(r.ss_below) << ","
           << (r.prop_above ? detail::csv_num(*r.prop_above) : "") << ","
           << (r.prop_below ? detail::csv_num(*r.prop_below) : "") << "," << r.n << "\n";
        summary["r2_identity"][label] = {{"r2", r.r2},
                                         {"ss_above", r.ss_above},
                                         {"ss_below", r.ss_below}};
      } catch (const std::invalid_argument&) {
      }
    }
    detail::write_file(dir / "r2_identity.csv", os.str());
  }

  // loess.csv: smoothed bid curve over the value grid.
  {
    std::ostringstream os;
    os << "treatment,value,smoothed_bid\n";
    for (const auto& [label, s] : samples_by_treatment) {
      if (s.size() < 3) continue;
      std::vector<LoessPoint> pts;
      std::vector<double> grid;
      std::int64_t vmax = 0;
      for (const auto& x : s) {
        pts.push_back({static_cast<double>(x.value), static_cast<double>(x.bid)});
        vmax = std::max(vmax, x.value);
      }
      for (std::int64_t v = 0; v <= vmax; ++v) grid.push_back(static_cast<double>(v));
      const auto curve = loess_smooth(pts, grid);
      for (const auto& p : curve)
        os << label << "," << detail::csv_num(p.x) << "," << detail::csv_num(p.y) << "\n";
    }
    detail::write_file(dir / "loess.csv", os.str());
  }

  // winner_profit_by_n.csv: the winner's-curse panel.
  {
    std::ostringstream os;
    os << "num_bidders,n,mean,q1,median,q3,min,max,negative_fraction\n";
    for (const auto& [nb, prof] : profits_by_n) {
      const auto ps = summarize_profits(nb, prof);
      os << nb << "," << ps.n << "," << detail::csv_num(ps.mean) << "," << detail::csv_num(ps.q1)
         << "," << detail::csv_num(ps.median) << "," << detail::csv_num(ps.q3) << ","
         << detail::csv_num(ps.min) << "," << detail::csv_num(ps.max) << ","
         << detail::csv_num(ps.negative_fraction) << "\n";
      summary["winner_profit_by_n"][std::to_string(nb)] = {
          {"mean", ps.mean}, {"median", ps.median}, {"negative_fraction", ps.negative_fraction}};
    }
    detail::write_file(dir / "winner_profit_by_n.csv", os.str());
  }

  // sniping.csv: final-winning-bid timing histogram and CDF per treatment.
  {
    std::ostringstream os;
    os << "treatment,period,count,cdf\n";
    for (const auto& [label, times] : times_by_treatment) {
      const auto sp = sniping_profile(times);
      for (const auto& [period, count] : sp.histogram)
        os << label << "," << period << "," << count << "," << detail::csv_num(sp.cdf(period))
           << "\n";
      if (sp.no_sale > 0) os << label << ",no_sale," << sp.no_sale << ",\n";
      summary["sniping"][label] = {{"sold", sp.total_sold}, {"no_sale", sp.no_sale}};
    }
    detail::write_file(dir / "sniping.csv", os.str());
  }

  // revenue.csv + revenue_tests.csv: per-treatment means and pairwise tests.
  {
    std::ostringstream os;
    os << "treatment,mean_revenue,n\n";
    std::ostringstream ot;
    ot << "treatment_a,treatment_b,t,df,p\n";
    if (revenues_by_treatment.size() >= 2) {
      bool testable = true;
      for (const auto& [label, rev] : revenues_by_treatment)
        if (rev.size() < 2) testable = false;
      if (testable) {
        try {
          const auto table = revenue_table(revenues_by_treatment);
          for (const auto& c : table.cells) {
            os << c.treatment << "," << detail::csv_num(c.mean_revenue) << "," << c.n << "\n";
            summary["revenue"][c.treatment] = {{"mean", c.mean_revenue}, {"n", c.n}};
          }
          for (const auto& p : table.pairs)
            ot << p.treatment_a << "," << p.treatment_b << "," << detail::csv_num(p.test.t) << ","
               << detail::csv_num(p.test.df) << "," << detail::csv_num(p.test.p) << "\n";
        } catch (const std::invalid_argument&) {
          testable = false;
        }
      }
      if (!testable) {
        for (const auto& [label, rev] : revenues_by_treatment) {
          const double mean =
              rev.empty() ? 0.0
                          : std::accumulate(rev.begin(), rev.end(), 0.0) / rev.size();
          os << label << "," << detail::csv_num(mean) << "," << rev.size() << "\n";
        }
      }
    } else {
      for (const auto& [label, rev] : revenues_by_treatment) {
        const double mean =
            rev.empty() ? 0.0 : std::accumulate(rev.begin(), rev.end(), 0.0) / rev.size();
        os << label << "," << detail::csv_num(mean) << "," << rev.size() << "\n";
        summary["revenue"][label] = {{"mean", mean}, {"n", rev.size()}};
      }
    }
    detail::write_file(dir / "revenue.csv", os.str());
    detail::write_file(dir / "revenue_tests.csv", ot.str());
  }

  detail::write_file(dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

}  // namespace auctionlab
