#include "normality/simplex.hpp"

#include "normality/errors.hpp"
#include "normality/freq.hpp"
#include "normality/parallel.hpp"
#include "normality/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace normality {

namespace {

std::size_t dimension(unsigned base, unsigned k) { return StringIndex(base, k).size(); }

template <typename T>
T zero_of() {
  return T(0);
}

// Shared constraint walk; `exceeds(residual)` decides a violation.
template <typename T, typename Exceeds>
MembershipReport check(unsigned base, unsigned k, std::span<const T> vec, Exceeds exceeds) {
  const StringIndex strings(base, k);
  if (vec.size() != strings.size()) {
    throw DomainError("is_member: expected " + std::to_string(strings.size()) + " entries, got " +
                      std::to_string(vec.size()));
  }
  MembershipReport report;
  auto as_double = [](const T& x) {
    if constexpr (std::is_same_v<T, Rational>) {
      return to_double(x);
    } else {
      return x;
    }
  };
  T total = zero_of<T>();
  for (std::size_t i = 0; i < vec.size(); ++i) {
    total += vec[i];
    if (exceeds(T(-vec[i])) && vec[i] < zero_of<T>()) {
      report.violations.push_back({ConstraintViolation::Kind::nonnegativity, strings.label(i),
                                   as_double(vec[i]), 0.0, as_double(vec[i])});
    }
  }
  const T sum_residual = total - T(1);
  if (exceeds(sum_residual < zero_of<T>() ? T(-sum_residual) : sum_residual)) {
    report.violations.push_back(
        {ConstraintViolation::Kind::sum, "", as_double(total), 1.0, as_double(sum_residual)});
  }
  if (k >= 2) {
    const StringIndex shorter(base, k - 1);
    const std::size_t reduced = shorter.size();
    for (std::size_t s = 0; s < reduced; ++s) {
      T left = zero_of<T>();
      T right = zero_of<T>();
      for (unsigned d = 0; d < base; ++d) {
        left += vec[d * reduced + s];   // s_0 s
        right += vec[s * base + d];     // s s_k
      }
      const T residual = left - right;
      if (exceeds(residual < zero_of<T>() ? T(-residual) : residual)) {
        report.violations.push_back({ConstraintViolation::Kind::coupling, shorter.label(s),
                                     as_double(left), as_double(right), as_double(residual)});
      }
    }
  }
  report.member = report.violations.empty();
  return report;
}

}  // namespace

std::string to_string(ConstraintViolation::Kind kind) {
  switch (kind) {
    case ConstraintViolation::Kind::nonnegativity:
      return "nonnegativity";
    case ConstraintViolation::Kind::sum:
      return "sum";
    case ConstraintViolation::Kind::coupling:
      return "coupling";
  }
  return "unknown";
}

MembershipReport is_member(unsigned base, unsigned k, std::span<const double> vec, double tol) {
  if (!(tol >= 0.0)) throw DomainError("is_member: tolerance must be nonnegative");
  return check<double>(base, k, vec, [tol](double magnitude) { return magnitude > tol; });
}

MembershipReport is_member(unsigned base, unsigned k, std::span<const Rational> vec) {
  return check<Rational>(base, k, vec, [](const Rational& magnitude) { return magnitude > 0; });
}

SimplexPoint SimplexPoint::make(unsigned base, unsigned k, std::vector<Rational> entries) {
  const auto report = is_member(base, k, std::span<const Rational>(entries));
  if (!report.member) {
    const auto& v = report.violations.front();
    throw DomainError("not a member of the frequency simplex: " + normality::to_string(v.kind) +
                      (v.label.empty() ? "" : " '" + v.label + "'") + " residual " +
                      std::to_string(v.residual));
  }
  return SimplexPoint{base, k, std::move(entries)};
}

std::vector<double> SimplexPoint::values() const { return to_doubles(entries); }

BigInt SimplexPoint::common_denominator() const { return normality::common_denominator(entries); }

std::vector<std::uint64_t> SimplexPoint::numerators() const {
  const BigInt den = common_denominator();
  std::vector<std::uint64_t> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    const Rational scaled = e * Rational(den);
    out.push_back(boost::multiprecision::numerator(scaled).convert_to<std::uint64_t>());
  }
  return out;
}

std::string SimplexPoint::to_string() const {
  std::string text = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) text += ",";
    text += format_rational(entries[i]);
  }
  return text + ")";
}

namespace {

void compositions(std::uint64_t remaining, std::size_t slot, std::vector<std::uint64_t>& parts,
                  const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  if (slot + 1 == parts.size()) {
    parts[slot] = remaining;
    visit(parts);
    return;
  }
  for (std::uint64_t v = 0; v <= remaining; ++v) {
    parts[slot] = v;
    compositions(remaining - v, slot + 1, parts, visit);
  }
}

bool coupled(const std::vector<std::uint64_t>& parts, unsigned base, std::size_t reduced) {
  for (std::size_t s = 0; s < reduced; ++s) {
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    for (unsigned d = 0; d < base; ++d) {
      left += parts[d * reduced + s];
      right += parts[s * base + d];
    }
    if (left != right) return false;
  }
  return true;
}

double log_binomial(double n, double r) {
  return std::lgamma(n + 1) - std::lgamma(r + 1) - std::lgamma(n - r + 1);
}

}  // namespace

std::vector<SimplexPoint> enumerate_rationals(unsigned base, unsigned k,
                                              std::uint64_t max_denominator) {
  if (max_denominator == 0) throw DomainError("enumerate_rationals: max_denominator must be >= 1");
  const std::size_t dim = dimension(base, k);
  const double work = log_binomial(static_cast<double>(max_denominator + dim - 1),
                                   static_cast<double>(dim - 1));
  if (work > std::log(5.0e7)) {
    throw DomainError("enumerate_rationals: too many lattice compositions for this (b, k, max_den)");
  }
  const std::size_t reduced = k >= 2 ? dim / base : 0;

  // Each point is reached once: at the denominator where its numerators are coprime.
  std::vector<std::vector<SimplexPoint>> per_denominator(max_denominator);
  parallel_for(max_denominator, [&](std::size_t slot) {
    const std::uint64_t den = slot + 1;
    std::vector<std::uint64_t> parts(dim, 0);
    compositions(den, 0, parts, [&](const std::vector<std::uint64_t>& p) {
      std::uint64_t g = 0;
      for (auto v : p) g = std::gcd(g, v);
      if (g != 1) return;
      if (reduced > 0 && !coupled(p, base, reduced)) return;
      SimplexPoint point{base, k, {}};
      point.entries.reserve(dim);
      for (auto v : p) point.entries.emplace_back(BigInt(v), BigInt(den));
      per_denominator[slot].push_back(std::move(point));
    });
  });

  std::vector<SimplexPoint> out;
  for (auto& bucket : per_denominator) {
    std::move(bucket.begin(), bucket.end(), std::back_inserter(out));
  }
  std::sort(out.begin(), out.end(), [](const SimplexPoint& a, const SimplexPoint& b) {
    return std::lexicographical_compare(a.entries.begin(), a.entries.end(), b.entries.begin(),
                                        b.entries.end());
  });
  return out;
}

double distance(std::span<const double> point, const SimplexPoint& target) {
  const auto values = target.values();
  return euclidean_distance(point, values);
}

}  // namespace normality
