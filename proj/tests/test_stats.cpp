#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "auctionlab/stats_math.hpp"

using namespace auctionlab::stats;

TEST_CASE("incomplete gamma against closed forms") {
  // P(1/2, x) = erf(sqrt(x)); P(1, x) = 1 - exp(-x).
  for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    CHECK(gamma_p(0.5, x) == Catch::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
    CHECK(gamma_p(1.0, x) == Catch::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    CHECK(gamma_p(2.5, x) + gamma_q(2.5, x) == Catch::Approx(1.0).epsilon(1e-12));
  }
  CHECK(gamma_p(3.0, 0.0) == 0.0);
  CHECK(gamma_q(3.0, 0.0) == 1.0);
  CHECK_THROWS_AS(gamma_p(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_p(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("incomplete beta against closed forms") {
  for (double x : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    CHECK(beta_inc(1.0, 1.0, x) == Catch::Approx(x).epsilon(1e-12));
    // I_x(1/2, 1/2) = (2/pi) asin(sqrt(x)).
    CHECK(beta_inc(0.5, 0.5, x) ==
          Catch::Approx(2.0 / M_PI * std::asin(std::sqrt(x))).epsilon(1e-10));
    // Symmetry identity.
    CHECK(beta_inc(2.0, 3.0, x) + beta_inc(3.0, 2.0, 1.0 - x) ==
          Catch::Approx(1.0).epsilon(1e-12));
    // I_x(1, b) = 1 - (1-x)^b.
    CHECK(beta_inc(1.0, 4.0, x) == Catch::Approx(1.0 - std::pow(1.0 - x, 4.0)).epsilon(1e-12));
  }
  CHECK(beta_inc(2.0, 2.0, 0.0) == 0.0);
  CHECK(beta_inc(2.0, 2.0, 1.0) == 1.0);
  CHECK_THROWS_AS(beta_inc(2.0, 2.0, 1.5), std::invalid_argument);
}

TEST_CASE("chi-square tail matches the reference table") {
  CHECK(chi2_sf(22.97, 9.0) == Catch::Approx(0.006264045713811514).epsilon(1e-9));
  CHECK(chi2_sf(59.46, 9.0) == Catch::Approx(1.7034268967109206e-09).epsilon(1e-9));
  CHECK(chi2_sf(2.0, 2.0) == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(chi2_sf(0.0, 5.0) == 1.0);
  CHECK(chi2_sf(-3.0, 5.0) == 1.0);
}

namespace {
// Independent oracle: two-sided t p-value by adaptive Simpson over the
// Student-t density.
double t_density(double u, double df) {
  const double c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                   0.5 * std::log(df * M_PI);
  return std::exp(c - (df + 1.0) / 2.0 * std::log1p(u * u / df));
}

double simpson(double a, double b, double df, int steps) {
  const double h = (b - a) / steps;
  double s = t_density(a, df) + t_density(b, df);
  for (int i = 1; i < steps; ++i)
    s += t_density(a + i * h, df) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double t_p_oracle(double t, double df) {
  const double a = std::fabs(t);
  // Central mass on [-a, a] via Simpson with a fine fixed grid.
  const double central = simpson(-a, a, df, 200000);
  return 1.0 - central;
}
}  // namespace

TEST_CASE("student-t p-value matches numeric integration") {
  for (double t : {0.5, 1.0, 2.5, 4.0}) {
    for (double df : {2.0, 3.7, 10.0, 58.3}) {
      CHECK(t_two_sided_p(t, df) == Catch::Approx(t_p_oracle(t, df)).epsilon(1e-7));
      CHECK(t_two_sided_p(-t, df) == Catch::Approx(t_two_sided_p(t, df)).epsilon(1e-12));
    }
  }
  // Cross-checked fixed points.
  CHECK(t_two_sided_p(2.5, 10.0) == Catch::Approx(0.031446844236608776).epsilon(1e-10));
  CHECK(t_two_sided_p(1.0, 3.7) == Catch::Approx(0.3781413997604525).epsilon(1e-10));
  CHECK(t_two_sided_p(0.0, 5.0) == Catch::Approx(1.0));
  CHECK_THROWS_AS(t_two_sided_p(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("normal tails") {
  CHECK(normal_sf(0.0) == Catch::Approx(0.5));
  CHECK(normal_sf(1.959963984540054) == Catch::Approx(0.025).epsilon(1e-10));
  CHECK(normal_two_sided_p(1.959963984540054) == Catch::Approx(0.05).epsilon(1e-10));
  CHECK(normal_two_sided_p(-1.959963984540054) == Catch::Approx(0.05).epsilon(1e-10));
}
