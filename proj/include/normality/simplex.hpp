#pragma once

#include "normality/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace normality {

/// A point of the polytope of shift-consistent probability vectors over
/// length-k strings: p_s >= 0, sum p_s = 1, and for every length-(k-1) string
/// s, sum over s_0 of p_{s_0 s} equals sum over s_k of p_{s s_k}.
/// Entries follow StringIndex order.
struct SimplexPoint {
  unsigned base = 2;
  unsigned k = 1;
  std::vector<Rational> entries;

  /// Throws DomainError unless the entries are an exact member.
  static SimplexPoint make(unsigned base, unsigned k, std::vector<Rational> entries);

  std::vector<double> values() const;
  BigInt common_denominator() const;
  /// entries * common_denominator(), as integers.
  std::vector<std::uint64_t> numerators() const;
  std::string to_string() const;

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;
};

struct ConstraintViolation {
  enum class Kind { nonnegativity, sum, coupling };
  Kind kind = Kind::sum;
  std::string label;  // string s for nonnegativity/coupling, empty for the sum
  double lhs = 0.0;   // coupling: sum over s_0 of p_{s_0 s}
  double rhs = 0.0;   // coupling: sum over s_k of p_{s s_k}
  double residual = 0.0;
};

std::string to_string(ConstraintViolation::Kind kind);

struct MembershipReport {
  bool member = true;
  std::vector<ConstraintViolation> violations;
};

/// Float membership within `tol` on every constraint.
MembershipReport is_member(unsigned base, unsigned k, std::span<const double> vec, double tol);
/// Exact membership (tolerance zero).
MembershipReport is_member(unsigned base, unsigned k, std::span<const Rational> vec);

/// All members whose entries share a denominator <= max_denominator, each
/// listed once, ordered lexicographically by entries.
std::vector<SimplexPoint> enumerate_rationals(unsigned base, unsigned k,
                                              std::uint64_t max_denominator);

double distance(std::span<const double> point, const SimplexPoint& target);

}  // namespace normality
