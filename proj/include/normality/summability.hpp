#pragma once

#include "normality/digits.hpp"
#include "normality/rational.hpp"
#include "normality/trajectory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace normality {

/// Finitely supported row n of a matrix: a_{n, cols[j]} = values[j], columns
/// strictly increasing. `exact` is present when every entry is rational.
struct MatrixRow {
  std::vector<std::uint64_t> cols;
  std::vector<double> values;
  std::optional<std::vector<Rational>> exact;

  double sum() const;
  double abs_sum() const;
};

/// Strictly increasing enumeration e_1 < e_2 < ... of an infinite subset of N.
struct SubsequenceRule {
  enum class Type { affine, list };
  Type type = Type::affine;
  std::uint64_t slope = 1;  // affine: e_n = slope * n + offset
  std::int64_t offset = 0;
  std::vector<std::uint64_t> indices;  // list: e_n = indices[n - 1], a finite prefix
  std::string origin;                  // how a list was produced, for reports

  static SubsequenceRule affine(std::uint64_t slope, std::int64_t offset);
  static SubsequenceRule list(std::vector<std::uint64_t> indices, std::string origin = "list");
  /// Positions n <= scan_limit with digit_n == digit.
  static SubsequenceRule digit_positions(const DigitStream& stream, Digit digit,
                                         std::uint64_t scan_limit);

  std::uint64_t operator()(std::uint64_t n) const;
  /// Number of defined terms; nullopt for affine rules.
  std::optional<std::uint64_t> length() const;
  void validate() const;
};

struct SparseEntry {
  std::uint64_t row = 1;
  std::uint64_t col = 1;
  Rational value;
};

/// a_{n, slope * n + offset} = value for every n where the column is >= 1.
struct AffineTerm {
  std::uint64_t slope = 1;
  std::int64_t offset = 0;
  Rational value;
};

struct MatrixSpec {
  enum class Kind { identity, cesaro, holder, riesz_log, sparse, affine, subsequence, factorial_style };

  Kind kind = Kind::identity;
  unsigned order = 1;                // holder
  std::vector<SparseEntry> entries;  // sparse, sorted by (row, col), deduplicated
  std::vector<AffineTerm> terms;     // affine, merged by (slope, offset)
  SubsequenceRule rule;              // subsequence
  GrowthRule growth{GrowthRule::Type::geometric, 20};  // factorial_style
  Rational first{-1};                // factorial_style: a_{n, g(2n-1)}
  Rational second{2};                // factorial_style: a_{n, g(2n)}

  static MatrixSpec identity();
  static MatrixSpec cesaro();
  static MatrixSpec holder(unsigned order);
  static MatrixSpec riesz_log();
  /// Duplicate (row, col) pairs must agree and are collapsed; zero entries are dropped.
  static MatrixSpec sparse(std::vector<SparseEntry> entries);
  static MatrixSpec affine(std::vector<AffineTerm> terms);
  /// a_{n,2n-1} = -1, a_{n,2n} = 2 for all n.
  static MatrixSpec remark();
  static MatrixSpec factorial_style(GrowthRule growth, Rational first = Rational(-1),
                                    Rational second = Rational(2));

  std::string name() const;
  /// Verdicts for this kind follow from a closed form rather than a window.
  bool closed_form() const;
  /// `with_exact` fills MatrixRow::exact (all builtin kinds are rational).
  MatrixRow row(std::uint64_t n, bool with_exact = false) const;
  /// Largest column index in row n (0 for an empty row), without building it.
  std::uint64_t reach(std::uint64_t n) const;
  /// Last row that can be nonzero, for kinds with finitely many rows.
  std::optional<std::uint64_t> last_row() const;
};

std::string to_string(MatrixSpec::Kind kind);
MatrixSpec::Kind matrix_kind_from_string(const std::string& name);

MatrixSpec subsequence_matrix(SubsequenceRule rule);

/// Largest N such that rows 1..N only touch columns <= horizon.
std::uint64_t rows_within(const MatrixSpec& matrix, std::uint64_t horizon);

struct RegularityReport {
  std::string matrix;
  bool closed_form = false;
  bool horizon_limited = false;
  std::uint64_t row_horizon = 0;
  std::uint64_t col_horizon = 0;
  double tol = 0.0;

  double sup_row_norm = 0.0;       // sup_n sum_i |a_{n,i}|
  double row_sum_limit = 0.0;      // lim_n sum_i a_{n,i}
  double strong_norm_limit = 0.0;  // lim_n sum_i |a_{n,i}|
  double max_tail_column = 0.0;    // max_{i <= col_horizon} |a_{n,i}| over the tail rows
  bool bounded = false;
  bool columns_vanish = false;
  bool row_sums_to_one = false;
  bool regular = false;
  bool strong = false;
  std::vector<std::string> witnesses;
};

/// Silverman-Toeplitz conditions plus lim_n sum_i |a_{n,i}| = 1. Closed-form
/// kinds are decided exactly; the others are judged on rows 1..row_horizon,
/// with limits read off the last quarter of that window.
RegularityReport st_check(const MatrixSpec& matrix, std::uint64_t row_horizon = 1000,
                          std::uint64_t col_horizon = 100, double tol = 1e-6);

/// A_n x for n in [n_first, n_last]. Throws when a row needs an index the
/// trajectory lacks.
Trajectory transform(const MatrixSpec& matrix, const Trajectory& x, std::uint64_t n_first,
                     std::uint64_t n_last);

/// Exact A_n x over a dense rational trajectory x_1..x_N (x[i-1] is x_i).
std::vector<std::vector<Rational>> transform_exact(const MatrixSpec& matrix,
                                                   const std::vector<std::vector<Rational>>& x,
                                                   std::uint64_t n_first, std::uint64_t n_last);

struct CoreCandidate {
  std::vector<double> point;
  std::uint64_t recurrence = 0;
};

struct CoreEstimate {
  std::size_t dim = 1;
  double eps = 0.05;
  std::uint64_t tail_cutoff = 0;
  std::uint64_t min_recurrence = 10;
  std::uint64_t horizon = 0;
  bool horizon_limited = true;
  std::vector<CoreCandidate> candidates;

  std::vector<std::vector<double>> points() const;
};

/// Greedy eps-net over the points with index > tail_cutoff; cells with at
/// least min_recurrence members contribute their mean. Means closer than eps
/// are merged, so the candidates end up pairwise >= eps apart.
CoreEstimate knopp_core_estimate(const Trajectory& x, double eps = 0.05, std::uint64_t tail_cutoff = 0,
                                 std::uint64_t min_recurrence = 10);

struct InclusionParams {
  double eps = 0.05;
  std::optional<std::uint64_t> original_cutoff;     // default: horizon / 2
  std::optional<std::uint64_t> transformed_cutoff;  // default: rows / 2
  std::uint64_t min_recurrence = 10;
  std::uint64_t transformed_min_recurrence = 10;
};

struct InclusionReport {
  std::string matrix;
  CoreEstimate original;
  CoreEstimate transformed;
  std::uint64_t rows_used = 0;
  double max_violation = 0.0;
  std::vector<double> worst_point;
  bool holds = false;  // max_violation <= eps
  bool horizon_limited = true;

  std::string verdict() const;
};

InclusionReport check_core_inclusion(const MatrixSpec& matrix, const Trajectory& x,
                                     const InclusionParams& params = {});

}  // namespace normality
