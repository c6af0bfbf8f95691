#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace auctionlab {

/// Exact rational number. Used for profits and increment values so that
/// settlement never goes through floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  void normalize() {
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::invalid_argument("Rational: divide by zero");
    return Rational(a.num * b.den, a.den * b.num);
  }
  Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num * b.den <=> b.num * a.den;
  }

  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// An amount on the bid grid: a count of grid increments. All mechanism
/// arithmetic happens on units; the increment's currency value is applied
/// only when rendering prompts or reports.
struct Money {
  std::int64_t units = 0;

  constexpr Money() = default;
  constexpr explicit Money(std::int64_t u) : units(u) {}

  friend Money operator+(Money a, Money b) { return Money{a.units + b.units}; }
  friend Money operator-(Money a, Money b) { return Money{a.units - b.units}; }
  friend auto operator<=>(const Money&, const Money&) = default;

  Rational as_rational() const { return Rational(units); }
};

inline std::ostream& operator<<(std::ostream& os, Money m) { return os << m.units; }

enum class SnapError { kOffGrid, kOutOfRange };

inline const char* to_string(SnapError e) {
  return e == SnapError::kOffGrid ? "off-grid" : "out-of-range";
}

struct SnapResult {
  std::optional<Money> value;
  std::optional<SnapError> error;
  bool ok() const { return value.has_value(); }
};

/// Accepts `amount` (in currency units) iff it is an exact multiple of
/// `increment` and lies in [low, high] (both in grid units). Never rounds.
inline SnapResult snap_check(const Rational& amount, const Rational& increment,
                             Money low, Money high) {
  if (increment.num <= 0) throw std::invalid_argument("snap_check: increment must be positive");
  const Rational q = amount / increment;
  if (!q.is_integer()) return {std::nullopt, SnapError::kOffGrid};
  const Money m{q.num};
  if (m < low || m > high) return {std::nullopt, SnapError::kOutOfRange};
  return {m, std::nullopt};
}

}  // namespace auctionlab
