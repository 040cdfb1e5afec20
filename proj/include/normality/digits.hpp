#pragma once

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace normality {

using Digit = std::uint8_t;

inline constexpr unsigned kMaxBase = 256;

/// First `count` digits of the unique nonterminating base-b expansion of p/q,
/// 0 < p/q <= 1. Terminating expansions are replaced by the representation
/// ending in repeated (b-1), so 1/2 = 0.0111...(2) and 1 = 0.999...(10).
std::vector<Digit> expand(std::int64_t numerator, std::int64_t denominator, unsigned base,
                          std::size_t count);

/// Increasing growth rule g(1) < g(2) < ... used by alternating-run streams and
/// factorial-style matrices. Values saturate at UINT64_MAX.
struct GrowthRule {
  enum class Type { geometric, factorial };
  Type type = Type::geometric;
  std::uint64_t ratio = 2;  // geometric only: g(i) = ratio^i

  std::uint64_t operator()(std::uint64_t i) const;
  std::string describe() const;
};

struct RationalSource {
  std::int64_t numerator = 1;
  std::int64_t denominator = 1;
};

struct PeriodicSource {
  std::vector<Digit> word;
};

struct BlockItem {
  std::vector<Digit> word;
  std::uint64_t repeat = 1;
};

/// Schedule of (word, repeat) items, cycled forever.
struct BlockSchedule {
  std::vector<BlockItem> items;
};

/// `inside` on positions [g(2i-1), g(2i)) for i >= 1, `outside` elsewhere.
struct AlternatingRuns {
  GrowthRule growth;
  Digit inside = 1;
  Digit outside = 0;
};

/// Digits drawn from std::mt19937_64 seeded with `seed`. Uniform digits use
/// rejection sampling on the raw 64-bit output (accept x < floor((2^64-1)/b)*b,
/// digit x mod b); weighted digits compare (x >> 11) * 2^-53 against cumulative
/// normalized weights. Both mappings are fixed so sequences are reproducible.
struct RandomSource {
  std::uint64_t seed = 0;
  std::vector<double> weights;  // empty = uniform
};

inline constexpr const char* kRandomAlgorithm = "mt19937_64";

/// Open-ended digit producer for constructions that have no closed JSON form
/// in this module (synthesized and witness streams).
class DigitGenerator {
 public:
  virtual ~DigitGenerator() = default;
  virtual std::string name() const = 0;
  /// Appends the first `count` digits to `out`.
  virtual void generate(std::size_t count, std::vector<Digit>& out) const = 0;
  virtual nlohmann::json describe() const = 0;
};

struct GeneratedSource {
  std::shared_ptr<const DigitGenerator> generator;
};

using StreamSource = std::variant<RationalSource, PeriodicSource, BlockSchedule, AlternatingRuns,
                                  RandomSource, GeneratedSource>;

/// Whether a stream is the expansion of some x in (0,1], or only a symbol
/// sequence (the all-zero stream, which frequency analysis still accepts).
enum class Realization { number, symbols };

/// Immutable description of a base-b digit stream indexed from 1. Reading
/// materializes a prefix; the same description always yields the same digits.
class DigitStream {
 public:
  static DigitStream rational(unsigned base, std::int64_t numerator, std::int64_t denominator);
  static DigitStream periodic(unsigned base, std::vector<Digit> word,
                              Realization realization = Realization::number);
  static DigitStream blocks(unsigned base, std::vector<BlockItem> items,
                            Realization realization = Realization::number);
  static DigitStream alternating_runs(unsigned base, AlternatingRuns runs);
  static DigitStream random(unsigned base, std::uint64_t seed, std::vector<double> weights = {});
  static DigitStream generated(unsigned base, std::shared_ptr<const DigitGenerator> generator,
                               Realization realization = Realization::number);

  unsigned base() const { return base_; }
  const StreamSource& source() const { return source_; }
  bool is_number() const { return realization_ == Realization::number; }
  Realization realization() const { return realization_; }
  std::string kind() const;

  std::vector<Digit> take(std::size_t n) const;

 private:
  DigitStream(unsigned base, StreamSource source, Realization realization)
      : base_(base), source_(std::move(source)), realization_(realization) {}

  unsigned base_;
  StreamSource source_;
  Realization realization_;
};

inline std::vector<Digit> take(const DigitStream& stream, std::size_t n) { return stream.take(n); }

void validate_base(unsigned base);

/// "0110" for bases up to 10; dot-separated decimal digits ("10.3.0") above.
std::string format_word(std::span<const Digit> word, unsigned base);
std::vector<Digit> parse_word(std::string_view text, unsigned base);

}  // namespace normality
