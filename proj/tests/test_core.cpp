#include <catch2/catch_amalgamated.hpp>

#include "auctionlab/money.hpp"
#include "auctionlab/rng.hpp"

using namespace auctionlab;

TEST_CASE("rational normalizes and computes exactly") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, 7).den == 1);

  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) / Rational(2, 3) == Rational(1, 2));
  CHECK(-Rational(1, 3) == Rational(-1, 3));

  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7).is_integer());
  CHECK_FALSE(Rational(1, 2).is_integer());
  CHECK(Rational(1, 2).to_double() == 0.5);

  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
}

TEST_CASE("money arithmetic and ordering") {
  CHECK(Money{3} + Money{4} == Money{7});
  CHECK(Money{3} - Money{4} == Money{-1});
  CHECK(Money{3} < Money{4});
  CHECK(Money{5}.as_rational() == Rational(5));
}

TEST_CASE("snap_check accepts only exact grid multiples") {
  const Money lo{0}, hi{99};
  SECTION("integer grid") {
    const Rational one(1);
    auto r = snap_check(Rational(44), one, lo, hi);
    REQUIRE(r.ok());
    CHECK(*r.value == Money{44});

    CHECK(snap_check(Rational(89, 2), one, lo, hi).error == SnapError::kOffGrid);
    CHECK(snap_check(Rational(100), one, lo, hi).error == SnapError::kOutOfRange);
    CHECK(snap_check(Rational(-1), one, lo, hi).error == SnapError::kOutOfRange);
  }
  SECTION("fractional increment") {
    const Rational half(1, 2);
    auto r = snap_check(Rational(89, 2), half, lo, hi);  // 44.5 = 89 half-steps
    REQUIRE(r.ok());
    CHECK(*r.value == Money{89});
    CHECK(snap_check(Rational(1, 3), half, lo, hi).error == SnapError::kOffGrid);
  }
  SECTION("never rounds") {
    // Within epsilon of a grid point is still off-grid: no tolerance exists.
    CHECK(snap_check(Rational(440001, 10000), Rational(1), lo, hi).error == SnapError::kOffGrid);
  }
  CHECK_THROWS_AS(snap_check(Rational(1), Rational(0), lo, hi), std::invalid_argument);
  CHECK_THROWS_AS(snap_check(Rational(1), Rational(-1), lo, hi), std::invalid_argument);
}

TEST_CASE("rng streams are deterministic and independent") {
  RngRoot a(42), b(42), c(43);
  auto s1 = a.stream("values", 0);
  auto s2 = b.stream("values", 0);
  for (int i = 0; i < 100; ++i) CHECK(s1.uniform_int(0, 99) == s2.uniform_int(0, 99));

  // Different names or indices give different sequences.
  auto t1 = a.stream("values", 0);
  auto t2 = a.stream("ties", 0);
  auto t3 = a.stream("values", 1);
  auto t4 = c.stream("values", 0);
  int diff_name = 0, diff_index = 0, diff_seed = 0;
  for (int i = 0; i < 50; ++i) {
    const auto x = t1.uniform_int(0, 999999);
    if (x != t2.uniform_int(0, 999999)) ++diff_name;
    if (x != t3.uniform_int(0, 999999)) ++diff_index;
    if (x != t4.uniform_int(0, 999999)) ++diff_seed;
  }
  CHECK(diff_name > 45);
  CHECK(diff_index > 45);
  CHECK(diff_seed > 45);
}

TEST_CASE("uniform_int covers the full range inclusively") {
  RngStream s(7);
  bool saw_lo = false, saw_hi = false;
  for (int i = 0; i < 2000; ++i) {
    const auto x = s.uniform_int(3, 7);
    REQUIRE(x >= 3);
    REQUIRE(x <= 7);
    if (x == 3) saw_lo = true;
    if (x == 7) saw_hi = true;
  }
  CHECK(saw_lo);
  CHECK(saw_hi);
  CHECK(s.uniform_int(5, 5) == 5);
}

TEST_CASE("uniform_int is close to uniform") {
  RngStream s(99);
  std::vector<int> counts(10, 0);
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) ++counts[s.uniform_int(0, 9)];
  for (int c : counts) CHECK(std::abs(c - trials / 10) < 500);
}

TEST_CASE("permutation is a bijection") {
  RngStream s(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = s.permutation(8);
    std::vector<bool> seen(8, false);
    for (int x : p) {
      REQUIRE(x >= 0);
      REQUIRE(x < 8);
      REQUIRE_FALSE(seen[x]);
      seen[x] = true;
    }
  }
}

TEST_CASE("uniform_real lies in [0,1)") {
  RngStream s(11);
  for (int i = 0; i < 1000; ++i) {
    const double x = s.uniform_real();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
  }
}

TEST_CASE("fnv1a64 matches reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}
