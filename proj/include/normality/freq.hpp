#pragma once

#include "normality/digits.hpp"
#include "normality/rational.hpp"
#include "normality/trajectory.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace normality {

/// Bijection between length-k strings over {0..b-1} and {0..b^k-1}: the
/// string s_1...s_k maps to its big-endian radix value sum s_j b^(k-j).
class StringIndex {
 public:
  StringIndex(unsigned base, unsigned length);

  unsigned base() const { return base_; }
  unsigned length() const { return length_; }
  std::size_t size() const { return size_; }

  std::size_t index(std::span<const Digit> s) const;
  std::vector<Digit> digits(std::size_t idx) const;
  std::string label(std::size_t idx) const;
  std::vector<std::string> labels() const;

 private:
  unsigned base_;
  unsigned length_;
  std::size_t size_;
};

/// Length-k window counts over start positions 1..n; entry s is
/// count[s] / n. The counts always sum to n, so the exact entries sum to 1.
struct FreqVector {
  unsigned base = 2;
  unsigned k = 1;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> counts;

  Rational exact(std::size_t idx) const;
  double value(std::size_t idx) const;
  std::vector<Rational> exact_entries() const;
  std::vector<double> values() const;
};

/// Needs digits up to position n+k-1; throws DomainError for short prefixes.
FreqVector freq_vector(std::span<const Digit> digits, unsigned base, unsigned k, std::uint64_t n);
FreqVector freq_vector(const DigitStream& stream, unsigned k, std::uint64_t n);

/// One pass over the prefix; the vector at each horizon equals freq_vector at
/// that horizon. Horizons must be strictly increasing and positive.
std::vector<FreqVector> freq_trajectory(std::span<const Digit> digits, unsigned base, unsigned k,
                                        const std::vector<std::uint64_t>& horizons);
std::vector<FreqVector> freq_trajectory(const DigitStream& stream, unsigned k,
                                        const std::vector<std::uint64_t>& horizons);

/// Float trajectory pi_1, ..., pi_N (dense, dimension b^k).
Trajectory frequency_path(std::span<const Digit> digits, unsigned base, unsigned k,
                          std::uint64_t horizon);
Trajectory frequency_path(const DigitStream& stream, unsigned k, std::uint64_t horizon);

/// Float trajectory sampled at the given vectors' horizons.
Trajectory to_trajectory(const std::vector<FreqVector>& vectors);

/// Counts of length-(k-1) strings s obtained as sum over s_k of count(s s_k),
/// i.e. occurrences of s at positions 1..n. Requires k >= 2.
std::vector<std::uint64_t> right_marginal(const FreqVector& v);
/// sum over s_0 of count(s_0 s): occurrences of s at positions 2..n+1.
std::vector<std::uint64_t> left_marginal(const FreqVector& v);

/// Window counts of one contiguous shard plus its edge digits (first and
/// last min(length, k-1) digits), so shards combine into whole-prefix counts.
struct ShardCounts {
  unsigned base = 2;
  unsigned k = 1;
  std::uint64_t length = 0;
  std::vector<std::uint64_t> counts;
  std::vector<Digit> head;
  std::vector<Digit> tail;
};

ShardCounts count_shard(std::span<const Digit> digits, unsigned base, unsigned k);
/// Associative; the result equals count_shard of the concatenation.
ShardCounts merge(const ShardCounts& left, const ShardCounts& right);

/// Merges counts of two adjacent shards. `boundary` holds the last k-1 digits
/// of the left shard followed by the first k-1 digits of the right shard; an
/// empty right shard (all-zero counts) takes at most the k-1 left digits.
std::vector<std::uint64_t> merge_counts(std::span<const std::uint64_t> left,
                                        std::span<const std::uint64_t> right,
                                        std::span<const Digit> boundary, unsigned base,
                                        unsigned k);

/// Window counts for start positions 1..n computed over `shards` contiguous
/// shards in parallel and merged; identical to the single-pass counts.
std::vector<std::uint64_t> count_windows_sharded(std::span<const Digit> digits, unsigned base,
                                                 unsigned k, std::uint64_t n, std::size_t shards);

}  // namespace normality
