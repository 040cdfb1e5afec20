#include "normality/digits.hpp"

#include "normality/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace normality {

void validate_base(unsigned base) {
  if (base < 2 || base > kMaxBase) {
    throw DomainError("base must lie in [2, " + std::to_string(kMaxBase) + "], got " +
                      std::to_string(base));
  }
}

std::vector<Digit> expand(std::int64_t numerator, std::int64_t denominator, unsigned base,
                          std::size_t count) {
  validate_base(base);
  if (denominator <= 0 || numerator <= 0 || numerator > denominator) {
    throw DomainError("expand: p/q must lie in (0,1], got " + std::to_string(numerator) + "/" +
                      std::to_string(denominator));
  }
  if (count == 0) throw DomainError("expand: count must be >= 1");
  // Remainder stays in (0, q]: d = ceil(r*b/q) - 1 never lets the tail vanish.
  std::vector<Digit> digits;
  digits.reserve(count);
  __extension__ typedef __int128 Wide;  // r * base reaches 2^71
  const Wide q = denominator;
  Wide r = numerator;
  for (std::size_t i = 0; i < count; ++i) {
    const Wide t = r * base;
    const Wide d = (t - 1) / q;
    digits.push_back(static_cast<Digit>(d));
    r = t - d * q;
  }
  return digits;
}

std::uint64_t GrowthRule::operator()(std::uint64_t i) const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value = 1;
  for (std::uint64_t j = 1; j <= i; ++j) {
    const std::uint64_t factor = type == Type::geometric ? ratio : j;
    if (value > kMax / factor) return kMax;
    value *= factor;
  }
  return value;
}

std::string GrowthRule::describe() const {
  return type == Type::geometric ? "geometric(" + std::to_string(ratio) + ")" : "factorial";
}

namespace {

void validate_word(const std::vector<Digit>& word, unsigned base, const char* what) {
  if (word.empty()) throw DomainError(std::string(what) + ": empty word");
  for (Digit d : word) {
    if (d >= base) {
      throw DomainError(std::string(what) + ": digit " + std::to_string(d) +
                        " out of range for base " + std::to_string(base));
    }
  }
}

bool all_zero(const std::vector<Digit>& word) {
  return std::all_of(word.begin(), word.end(), [](Digit d) { return d == 0; });
}

struct Emitter {
  unsigned base;
  std::size_t n;
  std::vector<Digit>& out;

  void operator()(const RationalSource& s) const {
    out = expand(s.numerator, s.denominator, base, n);
  }

  void operator()(const PeriodicSource& s) const {
    for (std::size_t i = 0; i < n; ++i) out.push_back(s.word[i % s.word.size()]);
  }

  void operator()(const BlockSchedule& s) const {
    while (out.size() < n) {
      for (const auto& item : s.items) {
        for (std::uint64_t r = 0; r < item.repeat; ++r) {
          for (Digit d : item.word) {
            if (out.size() == n) return;
            out.push_back(d);
          }
        }
      }
    }
  }

  void operator()(const AlternatingRuns& s) const {
    out.assign(n, s.outside);
    for (std::uint64_t i = 1;; ++i) {
      const std::uint64_t lo = s.growth(2 * i - 1);
      if (lo > n) break;
      const std::uint64_t hi = std::min<std::uint64_t>(s.growth(2 * i), n + 1);
      std::fill(out.begin() + static_cast<std::ptrdiff_t>(lo - 1),
                out.begin() + static_cast<std::ptrdiff_t>(hi - 1), s.inside);
    }
  }

  void operator()(const RandomSource& s) const {
    std::mt19937_64 engine(s.seed);
    if (s.weights.empty()) {
      const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / base * base;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t x = engine();
        while (x >= limit) x = engine();
        out.push_back(static_cast<Digit>(x % base));
      }
      return;
    }
    std::vector<double> cumulative(s.weights.size());
    std::partial_sum(s.weights.begin(), s.weights.end(), cumulative.begin());
    const double total = cumulative.back();
    for (auto& c : cumulative) c /= total;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      out.push_back(static_cast<Digit>(
          std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(base) - 1)));
    }
  }

  void operator()(const GeneratedSource& s) const { s.generator->generate(n, out); }
};

}  // namespace

DigitStream DigitStream::rational(unsigned base, std::int64_t numerator, std::int64_t denominator) {
  validate_base(base);
  if (denominator <= 0 || numerator <= 0 || numerator > denominator) {
    throw DomainError("rational stream: p/q must lie in (0,1]");
  }
  return DigitStream(base, RationalSource{numerator, denominator}, Realization::number);
}

DigitStream DigitStream::periodic(unsigned base, std::vector<Digit> word, Realization realization) {
  validate_base(base);
  validate_word(word, base, "periodic stream");
  if (realization == Realization::number && all_zero(word)) {
    throw DomainError("periodic stream: the all-zero word expands no x in (0,1]");
  }
  return DigitStream(base, PeriodicSource{std::move(word)}, realization);
}

DigitStream DigitStream::blocks(unsigned base, std::vector<BlockItem> items,
                                Realization realization) {
  validate_base(base);
  if (items.empty()) throw DomainError("block stream: empty schedule");
  bool nonzero = false;
  for (const auto& item : items) {
    validate_word(item.word, base, "block stream");
    if (item.repeat == 0) throw DomainError("block stream: repeat count must be >= 1");
    nonzero = nonzero || !all_zero(item.word);
  }
  if (realization == Realization::number && !nonzero) {
    throw DomainError("block stream: an all-zero schedule expands no x in (0,1]");
  }
  return DigitStream(base, BlockSchedule{std::move(items)}, realization);
}

DigitStream DigitStream::alternating_runs(unsigned base, AlternatingRuns runs) {
  validate_base(base);
  if (runs.inside >= base || runs.outside >= base) {
    throw DomainError("alternating runs: digit out of range");
  }
  if (runs.inside == 0 && runs.outside == 0) {
    throw DomainError("alternating runs: all-zero stream expands no x in (0,1]");
  }
  if (runs.growth.type == GrowthRule::Type::geometric && runs.growth.ratio < 2) {
    throw DomainError("alternating runs: geometric ratio must be >= 2");
  }
  return DigitStream(base, runs, Realization::number);
}

DigitStream DigitStream::random(unsigned base, std::uint64_t seed, std::vector<double> weights) {
  validate_base(base);
  if (!weights.empty()) {
    if (weights.size() != base) throw DomainError("random stream: need one weight per digit");
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw DomainError("random stream: weights must be nonnegative");
      total += w;
    }
    if (total <= 0.0) throw DomainError("random stream: weights sum to zero");
    if (total == weights[0]) {
      throw DomainError("random stream: all mass on digit 0 expands no x in (0,1]");
    }
  }
  return DigitStream(base, RandomSource{seed, std::move(weights)}, Realization::number);
}

DigitStream DigitStream::generated(unsigned base, std::shared_ptr<const DigitGenerator> generator,
                                   Realization realization) {
  validate_base(base);
  if (!generator) throw DomainError("generated stream: null generator");
  return DigitStream(base, GeneratedSource{std::move(generator)}, realization);
}

std::string DigitStream::kind() const {
  struct Namer {
    std::string operator()(const RationalSource&) const { return "rational"; }
    std::string operator()(const PeriodicSource&) const { return "periodic"; }
    std::string operator()(const BlockSchedule&) const { return "blocks"; }
    std::string operator()(const AlternatingRuns&) const { return "runs"; }
    std::string operator()(const RandomSource&) const { return "random"; }
    std::string operator()(const GeneratedSource& s) const { return s.generator->name(); }
  };
  return std::visit(Namer{}, source_);
}

std::vector<Digit> DigitStream::take(std::size_t n) const {
  if (n == 0) throw DomainError("take: n must be >= 1");
  std::vector<Digit> out;
  out.reserve(n);
  std::visit(Emitter{base_, n, out}, source_);
  if (out.size() != n) throw DomainError("stream '" + kind() + "' produced too few digits");
  return out;
}

std::string format_word(std::span<const Digit> word, unsigned base) {
  std::string text;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (base <= 10) {
      text.push_back(static_cast<char>('0' + word[i]));
    } else {
      if (i > 0) text.push_back('.');
      text += std::to_string(word[i]);
    }
  }
  return text;
}

std::vector<Digit> parse_word(std::string_view text, unsigned base) {
  validate_base(base);
  std::vector<Digit> word;
  if (base <= 10 && text.find('.') == std::string_view::npos) {
    for (char c : text) {
      if (c < '0' || c > '9' || static_cast<unsigned>(c - '0') >= base) {
        throw DomainError("word '" + std::string(text) + "' is not over base " +
                          std::to_string(base));
      }
      word.push_back(static_cast<Digit>(c - '0'));
    }
    return word;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t dot = std::min(text.find('.', start), text.size());
    const std::string_view part = text.substr(start, dot - start);
    unsigned value = 0;
    if (part.empty()) throw DomainError("word '" + std::string(text) + "' has an empty digit");
    for (char c : part) {
      if (c < '0' || c > '9') throw DomainError("word '" + std::string(text) + "' is malformed");
      value = value * 10 + static_cast<unsigned>(c - '0');
      if (value >= base) {
        throw DomainError("word '" + std::string(text) + "' is not over base " +
                          std::to_string(base));
      }
    }
    word.push_back(static_cast<Digit>(value));
    start = dot + 1;
  }
  return word;
}

}  // namespace normality
