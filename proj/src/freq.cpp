#include "normality/freq.hpp"

#include "normality/errors.hpp"
#include "normality/parallel.hpp"

#include <algorithm>

namespace normality {

namespace {

constexpr std::size_t kMaxStrings = std::size_t{1} << 24;

void require_digits(std::span<const Digit> digits, unsigned k, std::uint64_t n) {
  if (k == 0) throw DomainError("k must be >= 1");
  if (n == 0) throw DomainError("n must be >= 1");
  if (digits.size() < n + k - 1) {
    throw DomainError("insufficient digits: need " + std::to_string(n + k - 1) + ", have " +
                      std::to_string(digits.size()));
  }
}

}  // namespace

StringIndex::StringIndex(unsigned base, unsigned length) : base_(base), length_(length), size_(1) {
  validate_base(base);
  if (length == 0) throw DomainError("string length must be >= 1");
  for (unsigned i = 0; i < length; ++i) {
    size_ *= base;
    if (size_ > kMaxStrings) throw DomainError("b^k too large");
  }
}

std::size_t StringIndex::index(std::span<const Digit> s) const {
  if (s.size() != length_) throw DomainError("string length mismatch");
  std::size_t idx = 0;
  for (Digit d : s) {
    if (d >= base_) throw DomainError("digit out of range");
    idx = idx * base_ + d;
  }
  return idx;
}

std::vector<Digit> StringIndex::digits(std::size_t idx) const {
  std::vector<Digit> s(length_);
  for (unsigned j = length_; j-- > 0;) {
    s[j] = static_cast<Digit>(idx % base_);
    idx /= base_;
  }
  return s;
}

std::string StringIndex::label(std::size_t idx) const { return format_word(digits(idx), base_); }

std::vector<std::string> StringIndex::labels() const {
  std::vector<std::string> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(label(i));
  return out;
}

Rational FreqVector::exact(std::size_t idx) const {
  return Rational(BigInt(counts.at(idx)), BigInt(n));
}

double FreqVector::value(std::size_t idx) const {
  return static_cast<double>(counts.at(idx)) / static_cast<double>(n);
}

std::vector<Rational> FreqVector::exact_entries() const {
  std::vector<Rational> out;
  out.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out.push_back(exact(i));
  return out;
}

std::vector<double> FreqVector::values() const {
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = value(i);
  return out;
}

FreqVector freq_vector(std::span<const Digit> digits, unsigned base, unsigned k, std::uint64_t n) {
  return freq_trajectory(digits, base, k, {n}).front();
}

FreqVector freq_vector(const DigitStream& stream, unsigned k, std::uint64_t n) {
  if (k == 0 || n == 0) throw DomainError("freq_vector: k and n must be >= 1");
  const auto digits = stream.take(n + k - 1);
  return freq_vector(digits, stream.base(), k, n);
}

std::vector<FreqVector> freq_trajectory(std::span<const Digit> digits, unsigned base, unsigned k,
                                        const std::vector<std::uint64_t>& horizons) {
  if (horizons.empty()) throw DomainError("freq_trajectory: no horizons");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] == 0 || (i > 0 && horizons[i] <= horizons[i - 1])) {
      throw DomainError("freq_trajectory: horizons must be positive and strictly increasing");
    }
  }
  require_digits(digits, k, horizons.back());
  const StringIndex strings(base, k);
  const std::size_t modulus = strings.size();

  std::vector<FreqVector> out;
  out.reserve(horizons.size());
  std::vector<std::uint64_t> counts(modulus, 0);
  std::size_t window = 0;
  for (unsigned j = 0; j + 1 < k; ++j) {
    if (digits[j] >= base) throw DomainError("digit out of range for base");
    window = window * base + digits[j];
  }
  std::size_t next = 0;
  for (std::uint64_t start = 1; start <= horizons.back(); ++start) {
    const Digit d = digits[start + k - 2];
    if (d >= base) throw DomainError("digit out of range for base");
    window = (window * base + d) % modulus;
    ++counts[window];
    if (start == horizons[next]) {
      out.push_back(FreqVector{base, k, start, counts});
      ++next;
    }
  }
  return out;
}

std::vector<FreqVector> freq_trajectory(const DigitStream& stream, unsigned k,
                                        const std::vector<std::uint64_t>& horizons) {
  if (horizons.empty()) throw DomainError("freq_trajectory: no horizons");
  if (k == 0) throw DomainError("k must be >= 1");
  const auto digits = stream.take(horizons.back() + k - 1);
  return freq_trajectory(digits, stream.base(), k, horizons);
}

Trajectory frequency_path(std::span<const Digit> digits, unsigned base, unsigned k,
                          std::uint64_t horizon) {
  require_digits(digits, k, horizon);
  const StringIndex strings(base, k);
  const std::size_t dim = strings.size();
  std::vector<double> values(horizon * dim);
  std::vector<std::uint64_t> counts(dim, 0);
  std::size_t window = 0;
  for (unsigned j = 0; j + 1 < k; ++j) window = window * base + digits[j];
  for (std::uint64_t start = 1; start <= horizon; ++start) {
    window = (window * base + digits[start + k - 2]) % dim;
    ++counts[window];
    // Divide rather than scale by 1/n so representable frequencies come out exact.
    const double n = static_cast<double>(start);
    double* row = values.data() + (start - 1) * dim;
    for (std::size_t s = 0; s < dim; ++s) row[s] = static_cast<double>(counts[s]) / n;
  }
  return Trajectory::dense(dim, std::move(values));
}

Trajectory frequency_path(const DigitStream& stream, unsigned k, std::uint64_t horizon) {
  if (k == 0 || horizon == 0) throw DomainError("frequency_path: k and horizon must be >= 1");
  const auto digits = stream.take(horizon + k - 1);
  return frequency_path(digits, stream.base(), k, horizon);
}

Trajectory to_trajectory(const std::vector<FreqVector>& vectors) {
  if (vectors.empty()) return Trajectory(1);
  Trajectory t(vectors.front().counts.size());
  for (const auto& v : vectors) t.push_back(v.n, v.values());
  return t;
}

std::vector<std::uint64_t> right_marginal(const FreqVector& v) {
  if (v.k < 2) throw DomainError("marginals need k >= 2");
  std::vector<std::uint64_t> out(v.counts.size() / v.base, 0);
  for (std::size_t idx = 0; idx < v.counts.size(); ++idx) out[idx / v.base] += v.counts[idx];
  return out;
}

std::vector<std::uint64_t> left_marginal(const FreqVector& v) {
  if (v.k < 2) throw DomainError("marginals need k >= 2");
  const std::size_t reduced = v.counts.size() / v.base;
  std::vector<std::uint64_t> out(reduced, 0);
  for (std::size_t idx = 0; idx < v.counts.size(); ++idx) out[idx % reduced] += v.counts[idx];
  return out;
}

namespace {

std::vector<Digit> first_digits(std::span<const Digit> digits, std::size_t count) {
  count = std::min(count, digits.size());
  return {digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::vector<Digit> last_digits(std::span<const Digit> digits, std::size_t count) {
  count = std::min(count, digits.size());
  return {digits.end() - static_cast<std::ptrdiff_t>(count), digits.end()};
}

// Windows of `joined` that start before `cut` (all of them cross it, since cut < k).
void count_crossing(std::span<const Digit> joined, std::size_t cut, unsigned base, unsigned k,
                    std::vector<std::uint64_t>& counts) {
  const StringIndex strings(base, k);
  for (std::size_t j = 0; j < cut && j + k <= joined.size(); ++j) {
    ++counts[strings.index(joined.subspan(j, k))];
  }
}

}  // namespace

ShardCounts count_shard(std::span<const Digit> digits, unsigned base, unsigned k) {
  const StringIndex strings(base, k);
  ShardCounts shard{base, k, digits.size(), std::vector<std::uint64_t>(strings.size(), 0), {}, {}};
  if (digits.size() >= k) {
    const auto fv = freq_vector(digits, base, k, digits.size() - k + 1);
    shard.counts = fv.counts;
  } else {
    for (Digit d : digits) {
      if (d >= base) throw DomainError("digit out of range for base");
    }
  }
  shard.head = first_digits(digits, k - 1);
  shard.tail = last_digits(digits, k - 1);
  return shard;
}

ShardCounts merge(const ShardCounts& left, const ShardCounts& right) {
  if (left.base != right.base || left.k != right.k) throw DomainError("merge: shape mismatch");
  const unsigned k = left.k;
  ShardCounts out{left.base, k, left.length + right.length, left.counts, {}, {}};
  for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += right.counts[i];

  std::vector<Digit> joined = left.tail;
  joined.insert(joined.end(), right.head.begin(), right.head.end());
  count_crossing(joined, left.tail.size(), left.base, k, out.counts);

  std::vector<Digit> heads = left.head;
  heads.insert(heads.end(), right.head.begin(), right.head.end());
  out.head = first_digits(heads, k - 1);
  std::vector<Digit> tails = left.tail;
  tails.insert(tails.end(), right.tail.begin(), right.tail.end());
  out.tail = last_digits(tails, k - 1);
  return out;
}

std::vector<std::uint64_t> merge_counts(std::span<const std::uint64_t> left,
                                        std::span<const std::uint64_t> right,
                                        std::span<const Digit> boundary, unsigned base,
                                        unsigned k) {
  const StringIndex strings(base, k);
  if (left.size() != strings.size() || right.size() != strings.size()) {
    throw DomainError("merge_counts: count vectors must have length b^k");
  }
  std::vector<std::uint64_t> out(left.begin(), left.end());
  bool right_empty = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += right[i];
    right_empty = right_empty && right[i] == 0;
  }
  const std::size_t overlap = k - 1;
  if (boundary.size() == 2 * overlap) {
    count_crossing(boundary, overlap, base, k, out);
  } else if (!(right_empty && boundary.size() <= overlap)) {
    throw DomainError("merge_counts: boundary must hold " + std::to_string(2 * overlap) +
                      " digits, got " + std::to_string(boundary.size()));
  }
  return out;
}

std::vector<std::uint64_t> count_windows_sharded(std::span<const Digit> digits, unsigned base,
                                                 unsigned k, std::uint64_t n,
                                                 std::size_t shards) {
  require_digits(digits, k, n);
  const std::span<const Digit> prefix = digits.first(n + k - 1);
  shards = std::max<std::size_t>(1, std::min<std::size_t>(shards, prefix.size()));
  std::vector<ShardCounts> parts(shards);
  const std::size_t step = prefix.size() / shards;
  parallel_for(shards, [&](std::size_t s) {
    const std::size_t begin = s * step;
    const std::size_t end = s + 1 == shards ? prefix.size() : begin + step;
    parts[s] = count_shard(prefix.subspan(begin, end - begin), base, k);
  });
  ShardCounts total = parts.front();
  for (std::size_t s = 1; s < shards; ++s) total = merge(total, parts[s]);
  return total.counts;
}

}  // namespace normality
