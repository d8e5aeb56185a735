#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pim {

// Exact arithmetic for all cycle/bandwidth quantities. boost::rational keeps
// values normalized (lowest terms, positive denominator), which is exactly the
// contract the rest of the library relies on.
using Rational = boost::rational<std::int64_t>;

inline Rational rat(std::int64_t n) { return Rational(n); }
inline Rational rat(std::int64_t n, std::int64_t d) { return Rational(n, d); }

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

// Floor toward negative infinity.
inline std::int64_t rat_floor(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) q -= 1;
  return q;
}

inline std::int64_t rat_ceil(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) q += 1;
  return q;
}

// Round half-down: ties go to the smaller integer.
inline std::int64_t rat_round_half_down(const Rational& r) {
  return rat_ceil(r - Rational(1, 2));
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Parses "a:b" ratio syntax (e.g. "1:3"); both parts positive integers.
inline Rational parse_ratio(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
    throw std::invalid_argument("ratio must have the form a:b, got '" + text + "'");
  std::int64_t a = std::stoll(text.substr(0, colon));
  std::int64_t b = std::stoll(text.substr(colon + 1));
  if (a <= 0 || b <= 0)
    throw std::invalid_argument("ratio parts must be positive, got '" + text + "'");
  return Rational(a, b);
}

}  // namespace pim
