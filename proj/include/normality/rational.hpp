#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace normality {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

double to_double(const Rational& r);
std::vector<double> to_doubles(const std::vector<Rational>& v);

/// "3/7", "-2", "0" (always reduced).
std::string format_rational(const Rational& r);

/// Accepts "p/q", "p", or a decimal literal such as "0.25" (converted exactly).
Rational parse_rational(std::string_view text);

/// Least common multiple of all denominators.
BigInt common_denominator(const std::vector<Rational>& v);

}  // namespace normality
