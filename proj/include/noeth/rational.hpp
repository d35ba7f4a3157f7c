#pragma once

// Exact rational arithmetic for the whole library. No floating point
// anywhere in the core: every coefficient, distance and bound is a
// boost::multiprecision::cpp_rational, serialized as "a/b".

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace noeth {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Raised on malformed input, failed preconditions and validation errors.
/// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an operation's result is undefined (bottom) rather than
/// invalid, e.g. reverse-orbit machinery under a non-surjective map.
/// The CLI maps this to exit code 3.
class UndefinedResultError : public std::runtime_error {
 public:
  explicit UndefinedResultError(const std::string& what) : std::runtime_error(what) {}
};

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  return Rational(Integer(num), Integer(den));
}

/// Parses "a", "a/b", with optional leading sign; whitespace is not accepted.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&]() -> ValidationError {
    return ValidationError("malformed rational: \"" + text + "\"");
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  const std::string num_part = text.substr(0, slash);
  const std::string den_part =
      slash == std::string::npos ? std::string("1") : text.substr(slash + 1);
  const auto is_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = allow_sign && (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!is_int(num_part, true) || !is_int(den_part, false)) throw bad();
  const Integer num(num_part);
  const Integer den(den_part);
  if (den == 0) throw ValidationError("rational with zero denominator: \"" + text + "\"");
  return Rational(num, den);
}

/// Canonical serialization: reduced "a/b", the "/b" omitted when b == 1.
inline std::string format_rational(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

inline Rational rational_abs(const Rational& value) { return value < 0 ? -value : value; }

/// Simplest rational in the closed interval [lo, hi]: the unique value with
/// minimal denominator (and minimal |numerator| among those). Standard
/// continued-fraction descent; used to snap bisection boxes to exact limits.
inline Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw ValidationError("simplest_in_interval: empty interval");
  if (lo <= 0 && 0 <= hi) return Rational(0);
  if (hi < 0) return -simplest_in_interval(-hi, -lo);
  // 0 < lo <= hi.
  const Integer whole = numerator(lo) / denominator(lo);  // floor: lo > 0
  const Rational frac = lo - Rational(whole);
  if (frac == 0) return lo;  // lo itself is the smallest integer candidate
  if (Rational(whole + 1) <= hi) return Rational(whole + 1);
  const Rational inner =
      simplest_in_interval(Rational(1) / (hi - Rational(whole)), Rational(1) / frac);
  return Rational(whole) + Rational(1) / inner;
}

}  // namespace noeth
