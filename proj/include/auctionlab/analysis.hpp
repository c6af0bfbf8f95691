#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "auctionlab/config.hpp"
#include "auctionlab/money.hpp"
#include "auctionlab/stats_math.hpp"

namespace auctionlab {

/// One (value, bid) observation taken from a settled round. Clock samples
/// carry the drop-out price as the bid and are tagged with `won` so metrics
/// that exclude winners can filter.
struct BidSample {
  std::int64_t value = 0;
  std::int64_t bid = 0;
  int bidder = 0;
  int round = 0;
  std::string experiment_id;
  bool won = false;
  Family family = Family::SPSB;
};

struct BidClassification {
  double under_pct = 0.0;
  double value_pct = 0.0;
  double over_pct = 0.0;
  long n = 0;
};

/// Exact-equality classification on the integer grid.
inline BidClassification classify_bids(const std::vector<BidSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("classify_bids: empty sample");
  long under = 0, at = 0, over = 0;
  for (const auto& s : samples) {
    if (s.bid < s.value) ++under;
    else if (s.bid == s.value) ++at;
    else ++over;
  }
  const double n = static_cast<double>(samples.size());
  return {100.0 * under / n, 100.0 * at / n, 100.0 * over / n,
          static_cast<long>(samples.size())};
}

struct TauResult {
  double tau = 0.0;
  double p = 1.0;
  long n = 0;
};

/// Tie-corrected Kendall tau_b with normal-approximation p-value.
inline TauResult kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("kendall_tau_b: need two equal-length samples of size >= 2");
  const long n = static_cast<long>(x.size());
  long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) { ++ties_x; continue; }
      if (dy == 0.0) { ++ties_y; continue; }
      if (dx * dy > 0.0) ++concordant;
      else ++discordant;
    }
  }
  const double n0 = static_cast<double>(n) * (n - 1) / 2.0;
  // Tie group sizes for the variance correction.
  auto tie_terms = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    std::size_t i = 0;
    while (i < v.size()) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      const double t = static_cast<double>(j - i);
      t1 += t * (t - 1) / 2.0;
      t2 += t * (t - 1) * (2 * t + 5);
      t3 += t * (t - 1) * (t - 2);
      i = j;
    }
    return std::array<double, 3>{t1, t2, t3};
  };
  const auto tx = tie_terms(x);
  const auto ty = tie_terms(y);
  const double denom = std::sqrt((n0 - tx[0]) * (n0 - ty[0]));
  if (denom == 0.0) throw std::invalid_argument("kendall_tau_b: degenerate all-tied input");
  TauResult r;
  r.n = n;
  r.tau = (static_cast<double>(concordant) - discordant) / denom;
  const double dn = static_cast<double>(n);
  const double v0 = dn * (dn - 1) * (2 * dn + 5);
  double var_s = (v0 - tx[1] - ty[1]) / 18.0 +
                 tx[2] * ty[2] / (9.0 * dn * (dn - 1) * (dn - 2)) +
                 2.0 * tx[0] * ty[0] / (dn * (dn - 1));
  if (var_s <= 0.0) var_s = 1e-12;
  const double z = (static_cast<double>(concordant) - discordant) / std::sqrt(var_s);
  r.p = stats::normal_two_sided_p(z);
  return r;
}

struct ChiSquareResult {
  double chi2 = 0.0;
  int df = 0;
  double p = 1.0;
  int bins_used = 0;
  bool bins_merged = false;
};

/// Two-sample chi-square homogeneity test on pre-binned counts. Bins whose
/// pooled expected count is zero are merged into their neighbor.
inline ChiSquareResult chi_square_from_counts(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("chi_square_from_counts: bin mismatch");
  ChiSquareResult r;
  // Merge empty pooled bins rightward.
  std::vector<double> ma, mb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!ma.empty() && a[i] + b[i] == 0.0) { r.bins_merged = true; continue; }
    if (a[i] + b[i] == 0.0 && i + 1 < a.size()) {
      a[i + 1] += a[i];
      b[i + 1] += b[i];
      r.bins_merged = true;
      continue;
    }
    ma.push_back(a[i]);
    mb.push_back(b[i]);
  }
  const double na = std::accumulate(ma.begin(), ma.end(), 0.0);
  const double nb = std::accumulate(mb.begin(), mb.end(), 0.0);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("chi_square_from_counts: empty sample");
  double chi2 = 0.0;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const double pooled = (ma[i] + mb[i]) / (na + nb);
    const double ea = na * pooled, eb = nb * pooled;
    if (ea > 0.0) chi2 += (ma[i] - ea) * (ma[i] - ea) / ea;
    if (eb > 0.0) chi2 += (mb[i] - eb) * (mb[i] - eb) / eb;
  }
  r.chi2 = chi2;
  r.bins_used = static_cast<int>(ma.size());
  r.df = r.bins_used - 1;
  r.p = stats::chi2_sf(chi2, static_cast<double>(r.df));
  return r;
}

/// Bins bid/value ratios into 10 equal-width bins on [0, 2] (ratios above 2
/// clamp into the top bin) and runs the homogeneity test. Zero-value
/// samples are dropped (ratio undefined).
inline ChiSquareResult chi_square_homogeneity(const std::vector<BidSample>& sa,
                                              const std::vector<BidSample>& sb, int bins = 10) {
  auto bin_counts = [bins](const std::vector<BidSample>& s) {
    std::vector<double> counts(bins, 0.0);
    for (const auto& x : s) {
      if (x.value == 0) continue;
      const double ratio = static_cast<double>(x.bid) / static_cast<double>(x.value);
      int b = static_cast<int>(ratio / (2.0 / bins));
      b = std::clamp(b, 0, bins - 1);
      counts[b] += 1.0;
    }
    return counts;
  };
  return chi_square_from_counts(bin_counts(sa), bin_counts(sb));
}

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

/// Welch two-sample t-test with Satterthwaite degrees of freedom.
inline TTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t_test: need at least 2 observations per sample");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / na;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / nb;
  double va = 0.0, vb = 0.0;
  for (double x : a) va += (x - ma) * (x - ma);
  for (double x : b) vb += (x - mb) * (x - mb);
  va /= (na - 1.0);
  vb /= (nb - 1.0);
  if (va == 0.0 && vb == 0.0) {
    if (ma == mb) return {0.0, na + nb - 2.0, 1.0};
    throw std::invalid_argument("welch_t_test: zero variance in both samples");
  }
  const double se2 = va / na + vb / nb;
  TTestResult r;
  r.t = (ma - mb) / std::sqrt(se2);
  r.df = se2 * se2 / ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
  r.p = stats::t_two_sided_p(r.t, r.df);
  return r;
}

/// Share of truthful play under each format's own definition: sealed bids
/// must equal the value exactly; clock drop-outs count when within one
/// increment of the value, winners excluded.
inline double truthful_rate(const std::vector<BidSample>& samples, Family family,
                            std::int64_t increment = 1) {
  long truthful = 0, total = 0;
  const bool clock = family == Family::AscendingClock;
  for (const auto& s : samples) {
    if (clock && s.won) continue;
    ++total;
    if (clock) {
      if (std::llabs(s.bid - s.value) <= increment) ++truthful;
    } else {
      if (s.bid == s.value) ++truthful;
    }
  }
  if (total == 0) return 0.0;
  return 100.0 * static_cast<double>(truthful) / static_cast<double>(total);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  long n = 0;
};

/// Mean |bid - value| with its standard error; clock samples exclude winners.
inline MeanSe mean_abs_diff(const std::vector<BidSample>& samples) {
  std::vector<double> d;
  for (const auto& s : samples) {
    if (s.family == Family::AscendingClock && s.won) continue;
    d.push_back(std::fabs(static_cast<double>(s.bid - s.value)));
  }
  if (d.empty()) throw std::invalid_argument("mean_abs_diff: empty sample");
  MeanSe r;
  r.n = static_cast<long>(d.size());
  r.mean = std::accumulate(d.begin(), d.end(), 0.0) / r.n;
  if (r.n > 1) {
    double v = 0.0;
    for (double x : d) v += (x - r.mean) * (x - r.mean);
    v /= (r.n - 1);
    r.se = std::sqrt(v / r.n);
  }
  return r;
}

struct R2Decomposition {
  double r2 = 0.0;
  double ss_above = 0.0;
  double ss_below = 0.0;
  std::optional<double> prop_above;
  std::optional<double> prop_below;
  long n = 0;
};

/// Fit quality against the identity line bid = value, with the residual sum
/// of squares split by over- vs under-bidding.
inline R2Decomposition r2_identity_decomposition(const std::vector<BidSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("r2_identity_decomposition: empty sample");
  const double n = static_cast<double>(samples.size());
  double mean_v = 0.0;
  for (const auto& s : samples) mean_v += static_cast<double>(s.value);
  mean_v /= n;
  double ss_tot = 0.0;
  R2Decomposition r;
  long above = 0, below = 0;
  for (const auto& s : samples) {
    const double dv = static_cast<double>(s.value) - mean_v;
    ss_tot += dv * dv;
    const double e = static_cast<double>(s.bid - s.value);
    if (e > 0.0) { r.ss_above += e * e; ++above; }
    else if (e < 0.0) { r.ss_below += e * e; ++below; }
  }
  if (ss_tot == 0.0)
    throw std::invalid_argument("r2_identity_decomposition: zero variance in values");
  r.r2 = 1.0 - (r.ss_above + r.ss_below) / ss_tot;
  const long nonzero = above + below;
  if (nonzero > 0) {
    r.prop_above = static_cast<double>(above) / nonzero;
    r.prop_below = static_cast<double>(below) / nonzero;
  }
  r.n = static_cast<long>(samples.size());
  return r;
}

struct LoessPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Locally weighted linear regression with tri-cube weights over the
/// span-fraction nearest neighbors, evaluated at `eval_x`. Singular local
/// fits fall back to the local weighted mean.
inline std::vector<LoessPoint> loess_smooth(const std::vector<LoessPoint>& points,
                                            const std::vector<double>& eval_x, double span = 0.75,
                                            int degree = 1) {
  if (degree != 0 && degree != 1)
    throw std::invalid_argument("loess_smooth: degree must be 0 or 1");
  const std::size_t n = points.size();
  if (n < static_cast<std::size_t>(degree + 2))
    throw std::invalid_argument("loess_smooth: too few points");
  if (span <= 0.0 || span > 1.0) throw std::invalid_argument("loess_smooth: span out of (0,1]");
  const std::size_t q = std::max<std::size_t>(degree + 2,
      static_cast<std::size_t>(std::ceil(span * static_cast<double>(n))));

  std::vector<LoessPoint> out;
  out.reserve(eval_x.size());
  std::vector<double> dist(n);
  for (double x0 : eval_x) {
    for (std::size_t i = 0; i < n; ++i) dist[i] = std::fabs(points[i].x - x0);
    std::vector<double> sorted = dist;
    std::nth_element(sorted.begin(), sorted.begin() + (q - 1), sorted.end());
    double h = sorted[q - 1];
    if (h == 0.0) h = 1e-12;

    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = dist[i] / h;
      if (u >= 1.0) continue;
      const double t = 1.0 - u * u * u;
      const double w = t * t * t;
      const double dx = points[i].x - x0;
      sw += w;
      swx += w * dx;
      swy += w * points[i].y;
      swxx += w * dx * dx;
      swxy += w * dx * points[i].y;
    }
    double y0;
    if (sw == 0.0) {
      y0 = 0.0;
    } else if (degree == 0) {
      y0 = swy / sw;
    } else {
      const double det = sw * swxx - swx * swx;
      if (std::fabs(det) < 1e-12 * std::max(1.0, sw * swxx)) {
        y0 = swy / sw;  // singular local design: local mean
      } else {
        // intercept of the local line at dx = 0
        y0 = (swxx * swy - swx * swxy) / det;
      }
    }
    out.push_back({x0, y0});
  }
  return out;
}

struct ProfitSummary {
  int num_bidders = 0;
  long n = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
  double negative_fraction = 0.0;
};

inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

/// Winner-profit distribution per auction size.
inline ProfitSummary summarize_profits(int num_bidders, std::vector<double> profits) {
  ProfitSummary s;
  s.num_bidders = num_bidders;
  s.n = static_cast<long>(profits.size());
  if (profits.empty()) return s;
  std::sort(profits.begin(), profits.end());
  s.min = profits.front();
  s.max = profits.back();
  s.q1 = quantile_sorted(profits, 0.25);
  s.median = quantile_sorted(profits, 0.5);
  s.q3 = quantile_sorted(profits, 0.75);
  s.mean = std::accumulate(profits.begin(), profits.end(), 0.0) / s.n;
  long neg = 0;
  for (double p : profits)
    if (p < 0.0) ++neg;
  s.negative_fraction = static_cast<double>(neg) / s.n;
  return s;
}

struct SnipingProfile {
  std::map<int, long> histogram;  // period -> count of final winning bids
  long no_sale = 0;
  long total_sold = 0;

  /// Cumulative share of final winning bids at or before `period`.
  double cdf(int period) const {
    if (total_sold == 0) return 0.0;
    long cum = 0;
    for (const auto& [p, c] : histogram)
      if (p <= period) cum += c;
    return static_cast<double>(cum) / static_cast<double>(total_sold);
  }
};

inline SnipingProfile sniping_profile(const std::vector<std::optional<int>>& final_bid_times) {
  SnipingProfile sp;
  for (const auto& t : final_bid_times) {
    if (!t) { ++sp.no_sale; continue; }
    ++sp.histogram[*t];
    ++sp.total_sold;
  }
  return sp;
}

struct RevenueCell {
  std::string treatment;
  double mean_revenue = 0.0;
  long n = 0;
};

struct RevenuePair {
  std::string treatment_a;
  std::string treatment_b;
  TTestResult test;
};

struct RevenueTable {
  std::vector<RevenueCell> cells;
  std::vector<RevenuePair> pairs;
};

/// Per-treatment mean revenue (no-sale counts as 0) and all pairwise Welch
/// t-tests.
inline RevenueTable revenue_table(const std::map<std::string, std::vector<double>>& by_treatment) {
  if (by_treatment.size() < 2) throw std::invalid_argument("revenue_table: need >= 2 treatments");
  RevenueTable t;
  for (const auto& [name, rev] : by_treatment) {
    RevenueCell c;
    c.treatment = name;
    c.n = static_cast<long>(rev.size());
    if (!rev.empty()) c.mean_revenue = std::accumulate(rev.begin(), rev.end(), 0.0) / c.n;
    t.cells.push_back(c);
  }
  for (auto a = by_treatment.begin(); a != by_treatment.end(); ++a) {
    for (auto b = std::next(a); b != by_treatment.end(); ++b) {
      RevenuePair p;
      p.treatment_a = a->first;
      p.treatment_b = b->first;
      p.test = welch_t_test(a->second, b->second);
      t.pairs.push_back(p);
    }
  }
  return t;
}

}  // namespace auctionlab
