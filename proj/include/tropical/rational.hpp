#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "tropical/errors.hpp"

namespace tropical {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

// Accepts "[+-]digits" or "[+-]digits/digits" with a nonzero denominator.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!detail::all_digits(num) || (slash != std::string_view::npos && !detail::all_digits(den)))
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  Rational q;
  q.get_num() = Integer(std::string(num), 10);
  q.get_den() = slash == std::string_view::npos ? Integer(1) : Integer(std::string(den), 10);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

// An exact rational or the tropical zero +infinity.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  ExtendedRational(long value) : value_(value) {}                 // NOLINT(google-explicit-constructor)
  ExtendedRational(int value) : value_(value) {}                  // NOLINT(google-explicit-constructor)

  static ExtendedRational infinity() {
    ExtendedRational x;
    x.infinite_ = true;
    return x;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  const Rational& value() const {
    if (infinite_) throw PreconditionError("value() of infinity");
    return value_;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) {
      if (a.infinite_ == b.infinite_) return std::strong_ordering::equal;
      return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return compare(a.value_, b.value_);
  }

  // Ordinary addition, infinity absorbing.
  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Rational(a.value_ + b.value_);
  }

  std::string to_string() const { return infinite_ ? "inf" : value_.get_str(); }

  static ExtendedRational parse(std::string_view text, bool allow_infinity) {
    std::string_view s = text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s == "inf" || s == "infinity" || s == "oo") {
      if (!allow_infinity) throw ParseError("infinite value not permitted here");
      return infinity();
    }
    return parse_rational(text);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& x) {
    return os << x.to_string();
  }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

}  // namespace tropical
