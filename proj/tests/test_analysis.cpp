#include <catch2/catch_amalgamated.hpp>

#include "auctionlab/analysis.hpp"
#include "auctionlab/rng.hpp"

using namespace auctionlab;

namespace {

std::vector<BidSample> make_samples(const std::vector<std::pair<std::int64_t, std::int64_t>>& vb,
                                    Family fam = Family::SPSB) {
  std::vector<BidSample> out;
  for (const auto& [v, b] : vb) {
    BidSample s;
    s.value = v;
    s.bid = b;
    s.family = fam;
    out.push_back(s);
  }
  return out;
}

// Independent O(n^2) oracle for tau_b, written directly from the defining
// sums rather than the grouped-tie bookkeeping used by the implementation.
double tau_b_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  const long n = static_cast<long>(x.size());
  double s = 0.0;
  long pairs_x = 0, pairs_y = 0;
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      const double sx = x[i] == x[j] ? 0.0 : (x[i] < x[j] ? 1.0 : -1.0);
      const double sy = y[i] == y[j] ? 0.0 : (y[i] < y[j] ? 1.0 : -1.0);
      s += sx * sy;
      if (sx != 0.0) ++pairs_x;
      if (sy != 0.0) ++pairs_y;
    }
  }
  return s / std::sqrt(static_cast<double>(pairs_x) * static_cast<double>(pairs_y));
}

}  // namespace

TEST_CASE("bid classification is exact on the grid") {
  auto s = make_samples({{10, 5}, {10, 10}, {10, 15}, {20, 20}});
  const auto c = classify_bids(s);
  CHECK(c.under_pct == Catch::Approx(25.0));
  CHECK(c.value_pct == Catch::Approx(50.0));
  CHECK(c.over_pct == Catch::Approx(25.0));
  CHECK(c.n == 4);
  CHECK_THROWS_AS(classify_bids({}), std::invalid_argument);
}

TEST_CASE("kendall tau_b matches the reference point") {
  std::vector<double> x{1, 2, 2, 3, 4, 4, 4, 5};
  std::vector<double> y{1, 3, 2, 4, 4, 5, 4, 6};
  const auto r = kendall_tau_b(x, y);
  CHECK(r.tau == Catch::Approx(0.8981462390204987).epsilon(1e-12));
  CHECK(r.p == Catch::Approx(0.0036986996990154655).epsilon(1e-9));
}

TEST_CASE("kendall tau_b matches the pairwise oracle on tied data") {
  RngStream rng(13);
  std::vector<double> x, y;
  for (int i = 0; i < 200; ++i) {
    // Coarse grids force heavy ties in both coordinates.
    x.push_back(static_cast<double>(rng.uniform_int(0, 9)));
    y.push_back(static_cast<double>(rng.uniform_int(0, 9)));
  }
  const auto r = kendall_tau_b(x, y);
  CHECK(r.tau == Catch::Approx(tau_b_oracle(x, y)).margin(1e-12));
  CHECK(r.p >= 0.0);
  CHECK(r.p <= 1.0);

  std::vector<double> flat(10, 3.0);
  CHECK_THROWS_AS(kendall_tau_b(flat, flat), std::invalid_argument);
}

TEST_CASE("chi-square homogeneity merges empty pooled bins") {
  // Identical samples: statistic 0, p = 1.
  std::vector<double> a{10, 0, 0, 10}, b{10, 0, 0, 10};
  const auto same = chi_square_from_counts(a, b);
  CHECK(same.chi2 == Catch::Approx(0.0).margin(1e-12));
  CHECK(same.bins_used == 2);
  CHECK(same.bins_merged);
  CHECK(same.df == 1);
  CHECK(same.p == Catch::Approx(1.0));

  // Hand-computed 2x2: a = (30, 10), b = (10, 30).
  const auto r = chi_square_from_counts({30, 10}, {10, 30});
  CHECK(r.chi2 == Catch::Approx(20.0).epsilon(1e-12));
  CHECK(r.df == 1);
  CHECK_FALSE(r.bins_merged);
}

TEST_CASE("ratio binning clamps above 2 and drops zero values") {
  std::vector<BidSample> a = make_samples({{10, 1}, {10, 50}, {0, 5}});
  std::vector<BidSample> b = make_samples({{10, 1}, {10, 50}});
  // Ratios 0.1 and 5 (clamped to top bin) in both samples; the zero-value
  // sample drops, so the two distributions are identical.
  const auto r = chi_square_homogeneity(a, b);
  CHECK(r.chi2 == Catch::Approx(0.0).margin(1e-12));
  CHECK(r.bins_used == 2);
}

TEST_CASE("welch t-test matches the reference point") {
  std::vector<double> a{12.1, 9.8, 11.3, 10.7, 13.2, 8.9, 10.1};
  std::vector<double> b{9.2, 8.1, 10.4, 7.7, 9.9};
  const auto r = welch_t_test(a, b);
  CHECK(r.t == Catch::Approx(2.401931615253449).epsilon(1e-12));
  CHECK(r.df == Catch::Approx(9.825793208227916).epsilon(1e-12));
  CHECK(r.p == Catch::Approx(0.03760160910319959).epsilon(1e-10));

  std::vector<double> c{5, 5, 5}, d{5, 5, 5};
  CHECK(welch_t_test(c, d).p == 1.0);
  std::vector<double> e{6, 6, 6};
  CHECK_THROWS_AS(welch_t_test(c, e), std::invalid_argument);
  CHECK_THROWS_AS(welch_t_test({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("truthful rate per format") {
  auto sealed = make_samples({{10, 10}, {20, 19}, {30, 30}, {40, 41}});
  CHECK(truthful_rate(sealed, Family::SPSB) == Catch::Approx(50.0));

  std::vector<BidSample> clock = make_samples(
      {{10, 10}, {20, 19}, {30, 27}, {40, 40}}, Family::AscendingClock);
  clock[3].won = true;  // the winner never reveals a drop-out price
  CHECK(truthful_rate(clock, Family::AscendingClock, 1) == Catch::Approx(100.0 * 2 / 3));
}

TEST_CASE("mean abs diff excludes clock winners") {
  std::vector<BidSample> s =
      make_samples({{10, 12}, {20, 20}, {30, 25}}, Family::AscendingClock);
  s[2].won = true;
  const auto r = mean_abs_diff(s);
  CHECK(r.n == 2);
  CHECK(r.mean == Catch::Approx(1.0));
}

TEST_CASE("identity-line decomposition splits the residual sum exactly") {
  auto s = make_samples({{10, 12}, {20, 18}, {30, 30}, {40, 45}, {50, 40}});
  const auto r = r2_identity_decomposition(s);
  double ss_res = 0.0;
  for (const auto& x : s) {
    const double e = static_cast<double>(x.bid - x.value);
    ss_res += e * e;
  }
  CHECK(r.ss_above + r.ss_below == ss_res);  // exact, not approximate
  CHECK(r.ss_above == Catch::Approx(4.0 + 25.0));
  CHECK(r.ss_below == Catch::Approx(4.0 + 100.0));
  REQUIRE(r.prop_above.has_value());
  CHECK(*r.prop_above == Catch::Approx(0.5));
  double mean_v = (10 + 20 + 30 + 40 + 50) / 5.0;
  double ss_tot = 0.0;
  for (const auto& x : s) ss_tot += (x.value - mean_v) * (x.value - mean_v);
  CHECK(r.r2 == Catch::Approx(1.0 - ss_res / ss_tot));
}

TEST_CASE("loess reproduces a linear relationship exactly") {
  std::vector<LoessPoint> pts;
  for (int i = 0; i <= 30; ++i)
    pts.push_back({static_cast<double>(i), 2.0 * i + 1.0});
  const auto out = loess_smooth(pts, {0.0, 7.5, 15.0, 30.0});
  for (const auto& p : out) CHECK(p.y == Catch::Approx(2.0 * p.x + 1.0).margin(1e-9));
}

TEST_CASE("loess falls back to the local mean on a singular design") {
  // All mass at one x: the local line is undetermined.
  std::vector<LoessPoint> pts{{5.0, 1.0}, {5.0, 3.0}, {5.0, 5.0}};
  const auto out = loess_smooth(pts, {5.0});
  CHECK(out[0].y == Catch::Approx(3.0));
}

TEST_CASE("loess tracks a smooth curve within tolerance") {
  std::vector<LoessPoint> pts;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 10.0;
    pts.push_back({x, x * x});
  }
  const auto out = loess_smooth(pts, {5.0});
  CHECK(out[0].y == Catch::Approx(25.0).margin(2.5));
  CHECK_THROWS_AS(loess_smooth(pts, {5.0}, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(loess_smooth(pts, {5.0}, 0.75, 3), std::invalid_argument);
}

TEST_CASE("profit summary quantiles") {
  const auto s = summarize_profits(3, {5.0, -1.0, 3.0, 7.0, 1.0});
  CHECK(s.n == 5);
  CHECK(s.min == -1.0);
  CHECK(s.max == 7.0);
  CHECK(s.median == 3.0);
  CHECK(s.q1 == 1.0);
  CHECK(s.q3 == 5.0);
  CHECK(s.mean == Catch::Approx(3.0));
  CHECK(s.negative_fraction == Catch::Approx(0.2));
  CHECK(quantile_sorted({1.0, 2.0}, 0.5) == Catch::Approx(1.5));
}

TEST_CASE("sniping profile cdf") {
  const auto sp = sniping_profile({1, 1, 5, 10, std::nullopt, 10});
  CHECK(sp.total_sold == 5);
  CHECK(sp.no_sale == 1);
  CHECK(sp.cdf(1) == Catch::Approx(0.4));
  CHECK(sp.cdf(9) == Catch::Approx(0.6));
  CHECK(sp.cdf(10) == Catch::Approx(1.0));
}

TEST_CASE("revenue table runs all pairwise tests") {
  std::map<std::string, std::vector<double>> rev{
      {"a", {50, 52, 48, 51}}, {"b", {40, 42, 41, 39}}, {"c", {50, 51, 49, 50}}};
  const auto t = revenue_table(rev);
  REQUIRE(t.cells.size() == 3);
  CHECK(t.cells[0].mean_revenue == Catch::Approx(50.25));
  REQUIRE(t.pairs.size() == 3);
  // a vs b clearly differ; a vs c do not.
  for (const auto& p : t.pairs) {
    if (p.treatment_a == "a" && p.treatment_b == "b") CHECK(p.test.p < 0.01);
    if (p.treatment_a == "a" && p.treatment_b == "c") CHECK(p.test.p > 0.1);
  }
  CHECK_THROWS_AS(revenue_table({{"only", {1.0, 2.0}}}), std::invalid_argument);
}
