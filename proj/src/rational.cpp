#include "normality/rational.hpp"

#include "normality/errors.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace normality {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

std::string format_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw SchemaError("malformed rational '" + std::string(whole) + "'");
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) throw SchemaError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw SchemaError("malformed rational '" + std::string(whole) + "'");
    }
  }
  BigInt value(std::string(text.substr(start)));
  return text.front() == '-' ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), text);
    const BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    const bool negative = !int_part.empty() && int_part.front() == '-';
    const BigInt whole =
        (int_part.empty() || int_part == "-" || int_part == "+") ? BigInt(0) : parse_integer(int_part, text);
    BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    Rational magnitude = Rational(boost::multiprecision::abs(whole)) + Rational(frac, scale);
    return negative ? Rational(-magnitude) : magnitude;
  }
  return Rational(parse_integer(text, text));
}

BigInt common_denominator(const std::vector<Rational>& v) {
  BigInt lcm = 1;
  for (const auto& x : v) {
    const BigInt den = boost::multiprecision::denominator(x);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  return lcm;
}

}  // namespace normality
