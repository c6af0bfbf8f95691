#include <catch2/catch_amalgamated.hpp>

#include "auctionlab/environment.hpp"

using namespace auctionlab;

TEST_CASE("ipv draws stay within the grid") {
  ValueEnvironment env;
  env.kind = EnvKind::IPV;
  env.ipv_high = Money{99};
  RngStream rng(1);
  bool saw_low_half = false, saw_high_half = false;
  for (int k = 0; k < 500; ++k) {
    auto d = draw_values(env, 3, rng);
    REQUIRE(d.values.size() == 3);
    CHECK_FALSE(d.common_component.has_value());
    for (auto v : d.values) {
      REQUIRE(v.units >= 0);
      REQUIRE(v.units <= 99);
      if (v.units < 50) saw_low_half = true;
      else saw_high_half = true;
    }
  }
  CHECK(saw_low_half);
  CHECK(saw_high_half);
}

TEST_CASE("apv values decompose into common plus private") {
  ValueEnvironment env;
  env.kind = EnvKind::APV;
  env.common_low = Money{0};
  env.common_high = Money{20};
  env.private_high = Money{20};
  RngStream rng(2);
  for (int k = 0; k < 200; ++k) {
    auto d = draw_values(env, 4, rng);
    REQUIRE(d.common_component.has_value());
    REQUIRE(d.private_components.has_value());
    const auto c = d.common_component->units;
    REQUIRE(c >= 0);
    REQUIRE(c <= 20);
    for (int i = 0; i < 4; ++i) {
      const auto p = (*d.private_components)[i];
      REQUIRE(p >= 0);
      REQUIRE(p <= 20);
      CHECK(d.values[i].units == c + p);
    }
  }
}

TEST_CASE("cv values decompose into common plus signed noise") {
  ValueEnvironment env;
  env.kind = EnvKind::CV;
  env.common_low = Money{20};
  env.common_high = Money{79};
  env.noise_bound = Money{20};
  RngStream rng(3);
  bool saw_negative_noise = false;
  for (int k = 0; k < 300; ++k) {
    auto d = draw_values(env, 3, rng);
    const auto c = d.common_component->units;
    REQUIRE(c >= 20);
    REQUIRE(c <= 79);
    for (int i = 0; i < 3; ++i) {
      const auto p = (*d.private_components)[i];
      REQUIRE(p >= -20);
      REQUIRE(p <= 20);
      CHECK(d.values[i].units == c + p);
      if (p < 0) saw_negative_noise = true;
    }
  }
  CHECK(saw_negative_noise);
}

TEST_CASE("value bounds per environment") {
  ValueEnvironment ipv;
  ipv.kind = EnvKind::IPV;
  CHECK(ipv.value_high() == Money{99});
  CHECK(ipv.value_low() == Money{0});

  ValueEnvironment apv;
  apv.kind = EnvKind::APV;
  apv.common_high = Money{20};
  apv.private_high = Money{20};
  CHECK(apv.value_high() == Money{40});
  CHECK(apv.value_low() == Money{0});

  ValueEnvironment cv;
  cv.kind = EnvKind::CV;
  cv.common_low = Money{20};
  cv.common_high = Money{79};
  cv.noise_bound = Money{20};
  CHECK(cv.value_high() == Money{99});
  CHECK(cv.value_low() == Money{0});
}

TEST_CASE("cv winner utility is common value minus price") {
  CHECK(true_utility_cv(Money{50}, Money{60}) == Rational(-10));
  CHECK(true_utility_cv(Money{50}, Money{40}) == Rational(10));
}

TEST_CASE("draw_values rejects fewer than two bidders") {
  ValueEnvironment env;
  RngStream rng(0);
  CHECK_THROWS_AS(draw_values(env, 1, rng), std::invalid_argument);
}
