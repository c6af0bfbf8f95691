#pragma once

// Parsers for model replies: a bare numeric bid for sealed formats and the
// tagged PLAN/ACTION blocks for the dynamic formats. Parse failures are
// reported, never guessed around; the caller decides whether to re-elicit.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "auctionlab/config.hpp"
#include "auctionlab/mechanisms/clock.hpp"
#include "auctionlab/money.hpp"

namespace auctionlab {

struct ParsedBid {
  Money bid{0};
  double raw = 0.0;       // as written by the model, before any snapping
  bool corrected = false; // raw was off-grid and got rounded
};

enum class ParseErrorKind {
  NoNumber,
  Ambiguous,
  OffGrid,     // strict policy only
  OutOfRange,
  MissingTag,
  BadAction,
  AmountMismatch,
};

template <typename T>
struct ParseResult {
  std::optional<T> value;
  ParseErrorKind error = ParseErrorKind::NoNumber;
  std::string message;
  bool ok() const { return value.has_value(); }

  static ParseResult success(T v) {
    ParseResult r;
    r.value = std::move(v);
    return r;
  }
  static ParseResult failure(ParseErrorKind k, std::string msg) {
    ParseResult r;
    r.error = k;
    r.message = std::move(msg);
    return r;
  }
};

namespace detail {

/// Extracts every numeric token ("44", "36.5", "$57", "-3") from free text.
/// Digits embedded in words (e.g. "iPhone16") still count; the sealed-bid
/// prompt demands a bare number so extra tokens are an ambiguity error
/// anyway.
inline std::vector<double> extract_numbers(const std::string& text) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const bool sign = text[i] == '-' && i + 1 < text.size() &&
                      (std::isdigit(static_cast<unsigned char>(text[i + 1])) ||
                       text[i + 1] == '.');
    if (std::isdigit(static_cast<unsigned char>(text[i])) ||
        (text[i] == '.' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1]))) ||
        sign) {
      std::size_t end = i + (sign ? 1 : 0);
      bool seen_dot = false;
      while (end < text.size()) {
        if (std::isdigit(static_cast<unsigned char>(text[end]))) { ++end; continue; }
        if (text[end] == '.' && !seen_dot && end + 1 < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[end + 1]))) {
          seen_dot = true;
          ++end;
          continue;
        }
        break;
      }
      out.push_back(std::stod(text.substr(i, end - i)));
      i = end;
    } else {
      ++i;
    }
  }
  return out;
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

/// First <TAG>...</TAG> block, case-insensitive on the tag name.
inline std::optional<std::string> extract_tag(const std::string& text, const std::string& tag) {
  const std::string lo = lower(text);
  const std::string open = "<" + lower(tag) + ">";
  const std::string close = "</" + lower(tag) + ">";
  const std::size_t a = lo.find(open);
  if (a == std::string::npos) return std::nullopt;
  const std::size_t b = lo.find(close, a + open.size());
  if (b == std::string::npos) return std::nullopt;
  return trim(text.substr(a + open.size(), b - a - open.size()));
}

}  // namespace detail

/// Parses a sealed-bid reply: exactly one number, snapped to the grid under
/// the configured off-grid policy and bounds-checked against [low, high].
inline ParseResult<ParsedBid> parse_scalar_bid(const std::string& reply, Money low, Money high,
                                               OffGridPolicy policy) {
  const auto nums = detail::extract_numbers(reply);
  if (nums.empty())
    return ParseResult<ParsedBid>::failure(ParseErrorKind::NoNumber, "no number in reply");
  if (nums.size() > 1)
    return ParseResult<ParsedBid>::failure(ParseErrorKind::Ambiguous,
                                           "multiple numbers in reply");
  const double raw = nums[0];
  ParsedBid b;
  b.raw = raw;
  if (raw == std::floor(raw)) {
    b.bid = Money{static_cast<std::int64_t>(raw)};
  } else if (policy == OffGridPolicy::Strict) {
    return ParseResult<ParsedBid>::failure(ParseErrorKind::OffGrid, "off-grid bid under strict policy");
  } else {
    b.bid = Money{static_cast<std::int64_t>(std::floor(raw + 0.5))};  // round half up
    b.corrected = true;
  }
  if (b.bid < low || b.bid > high)
    return ParseResult<ParsedBid>::failure(ParseErrorKind::OutOfRange, "bid outside allowed range");
  return ParseResult<ParsedBid>::success(b);
}

struct ParsedClockAction {
  ClockDecision decision = ClockDecision::Stay;
  std::string plan;
  std::string reflection;
};

/// Parses the <PLAN>/<ACTION>/<REFLECTION> block of a clock reply. Only the
/// ACTION is mandatory.
inline ParseResult<ParsedClockAction> parse_clock_action(const std::string& reply) {
  const auto action = detail::extract_tag(reply, "ACTION");
  if (!action)
    return ParseResult<ParsedClockAction>::failure(ParseErrorKind::MissingTag,
                                                   "missing ACTION tag");
  const std::string a = detail::lower(*action);
  ParsedClockAction out;
  if (a == "yes") out.decision = ClockDecision::Stay;
  else if (a == "no") out.decision = ClockDecision::Exit;
  else
    return ParseResult<ParsedClockAction>::failure(ParseErrorKind::BadAction,
                                                   "ACTION must be Yes or No");
  if (auto p = detail::extract_tag(reply, "PLAN")) out.plan = *p;
  if (auto r = detail::extract_tag(reply, "REFLECTION")) out.reflection = *r;
  return ParseResult<ParsedClockAction>::success(out);
}

struct ParsedEbayAction {
  bool hold = false;
  Money amount{0};  // meaningful when !hold
  double raw_amount = 0.0;
  bool corrected = false;
  std::string plan;
};

/// Parses the <PLAN>/<CHECK>/<ACTION>/<AMOUNT> block of a proxy-bid reply.
/// HOLD must carry amount 0; BID must carry a positive in-range amount not
/// below the bidder's standing maximum.
inline ParseResult<ParsedEbayAction> parse_ebay_action(const std::string& reply, Money low,
                                                       Money high, std::optional<Money> last_bid,
                                                       OffGridPolicy policy) {
  const auto action = detail::extract_tag(reply, "ACTION");
  if (!action)
    return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::MissingTag,
                                                  "missing ACTION tag");
  const std::string a = detail::lower(*action);
  ParsedEbayAction out;
  if (auto p = detail::extract_tag(reply, "PLAN")) out.plan = *p;

  if (a == "hold") {
    out.hold = true;
    // A HOLD with a nonzero amount signals confusion; reject it.
    if (auto amt = detail::extract_tag(reply, "AMOUNT")) {
      const auto nums = detail::extract_numbers(*amt);
      if (nums.size() == 1 && nums[0] != 0.0)
        return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::AmountMismatch,
                                                      "HOLD requires amount 0");
    }
    return ParseResult<ParsedEbayAction>::success(out);
  }
  if (a != "bid")
    return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::BadAction,
                                                  "ACTION must be BID or HOLD");

  const auto amt = detail::extract_tag(reply, "AMOUNT");
  if (!amt)
    return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::MissingTag,
                                                  "missing AMOUNT tag");
  const auto nums = detail::extract_numbers(*amt);
  if (nums.empty())
    return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::NoNumber,
                                                  "no number in AMOUNT");
  if (nums.size() > 1)
    return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::Ambiguous,
                                                  "multiple numbers in AMOUNT");
  const double raw = nums[0];
  out.raw_amount = raw;
  if (raw == std::floor(raw)) {
    out.amount = Money{static_cast<std::int64_t>(raw)};
  } else if (policy == OffGridPolicy::Strict) {
    return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::OffGrid,
                                                  "off-grid amount under strict policy");
  } else {
    out.amount = Money{static_cast<std::int64_t>(std::floor(raw + 0.5))};
    out.corrected = true;
  }
  if (out.amount.units == 0)
    return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::AmountMismatch,
                                                  "BID requires a nonzero amount");
  if (out.amount < low || out.amount > high)
    return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::OutOfRange,
                                                  "amount outside allowed range");
  if (last_bid && out.amount < *last_bid)
    return ParseResult<ParsedEbayAction>::failure(ParseErrorKind::AmountMismatch,
                                                  "cannot bid lower than the standing maximum");
  return ParseResult<ParsedEbayAction>::success(out);
}

}  // namespace auctionlab
