#include "normality/summability.hpp"

#include "normality/errors.hpp"
#include "normality/hull.hpp"
#include "normality/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace normality {

namespace {

constexpr auto kSaturated = std::numeric_limits<std::uint64_t>::max();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Row n of C^m is ((C^T)^m e_n)^T, and (C^T v)_i = sum_{j >= i} v_j / j.
template <typename T>
std::vector<T> holder_weights(std::uint64_t n, unsigned order) {
  std::vector<T> v(n, T(0));
  v[n - 1] = T(1);
  for (unsigned step = 0; step < order; ++step) {
    T acc(0);
    for (std::uint64_t i = n; i >= 1; --i) {
      acc += v[i - 1] / T(i);
      v[i - 1] = acc;
    }
  }
  return v;
}

template <typename T>
std::vector<T> riesz_weights(std::uint64_t n) {
  T harmonic(0);
  for (std::uint64_t i = 1; i <= n; ++i) harmonic += T(1) / T(i);
  std::vector<T> v(n);
  for (std::uint64_t i = 1; i <= n; ++i) v[i - 1] = T(1) / T(i) / harmonic;
  return v;
}

MatrixRow from_exact(std::vector<std::uint64_t> cols, std::vector<Rational> exact, bool keep) {
  MatrixRow row;
  row.cols = std::move(cols);
  row.values = to_doubles(exact);
  if (keep) row.exact = std::move(exact);
  return row;
}

std::int64_t affine_column(std::uint64_t slope, std::int64_t offset, std::uint64_t n) {
  return static_cast<std::int64_t>(slope * n) + offset;
}

}  // namespace

double MatrixRow::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double MatrixRow::abs_sum() const {
  double s = 0.0;
  for (double v : values) s += std::abs(v);
  return s;
}

SubsequenceRule SubsequenceRule::affine(std::uint64_t slope, std::int64_t offset) {
  SubsequenceRule rule;
  rule.type = Type::affine;
  rule.slope = slope;
  rule.offset = offset;
  rule.origin = "affine";
  rule.validate();
  return rule;
}

SubsequenceRule SubsequenceRule::list(std::vector<std::uint64_t> indices, std::string origin) {
  SubsequenceRule rule;
  rule.type = Type::list;
  rule.indices = std::move(indices);
  rule.origin = std::move(origin);
  rule.validate();
  return rule;
}

SubsequenceRule SubsequenceRule::digit_positions(const DigitStream& stream, Digit digit,
                                                 std::uint64_t scan_limit) {
  if (digit >= stream.base()) throw DomainError("subsequence: digit out of range for base");
  const auto digits = stream.take(scan_limit);
  std::vector<std::uint64_t> positions;
  for (std::uint64_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == digit) positions.push_back(i + 1);
  }
  return list(std::move(positions), "positions of digit " + std::to_string(digit) + " in " + stream.kind());
}

std::uint64_t SubsequenceRule::operator()(std::uint64_t n) const {
  if (n == 0) throw DomainError("subsequence: index starts at 1");
  if (type == Type::affine) return static_cast<std::uint64_t>(affine_column(slope, offset, n));
  if (n > indices.size()) {
    throw DomainError("subsequence: rule defines only " + std::to_string(indices.size()) + " terms");
  }
  return indices[n - 1];
}

std::optional<std::uint64_t> SubsequenceRule::length() const {
  if (type == Type::affine) return std::nullopt;
  return indices.size();
}

void SubsequenceRule::validate() const {
  if (type == Type::affine) {
    if (slope == 0) throw DomainError("subsequence: affine slope must be >= 1");
    if (affine_column(slope, offset, 1) < 1) throw DomainError("subsequence: e_1 must be >= 1");
    return;
  }
  if (indices.empty()) throw DomainError("subsequence: empty index list");
  if (indices.front() == 0) throw DomainError("subsequence: indices start at 1");
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] <= indices[i - 1]) throw DomainError("subsequence: rule is not strictly increasing");
  }
}

MatrixSpec MatrixSpec::identity() { return MatrixSpec{}; }

MatrixSpec MatrixSpec::cesaro() {
  MatrixSpec m;
  m.kind = Kind::cesaro;
  return m;
}

MatrixSpec MatrixSpec::holder(unsigned order) {
  if (order == 0) throw DomainError("holder: order must be >= 1");
  MatrixSpec m;
  m.kind = Kind::holder;
  m.order = order;
  return m;
}

MatrixSpec MatrixSpec::riesz_log() {
  MatrixSpec m;
  m.kind = Kind::riesz_log;
  return m;
}

MatrixSpec MatrixSpec::sparse(std::vector<SparseEntry> entries) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> cells;
  for (auto& e : entries) {
    if (e.row == 0 || e.col == 0) throw DomainError("sparse matrix: rows and columns start at 1");
    const auto [it, inserted] = cells.emplace(std::make_pair(e.row, e.col), e.value);
    if (!inserted && it->second != e.value) {
      throw DomainError("sparse matrix: conflicting duplicate entry at (" + std::to_string(e.row) + ", " +
                        std::to_string(e.col) + ")");
    }
  }
  MatrixSpec m;
  m.kind = Kind::sparse;
  for (auto& [key, value] : cells) {
    if (value != 0) m.entries.push_back({key.first, key.second, value});
  }
  return m;
}

MatrixSpec MatrixSpec::affine(std::vector<AffineTerm> terms) {
  std::map<std::pair<std::uint64_t, std::int64_t>, Rational> merged;
  for (auto& t : terms) merged[{t.slope, t.offset}] += t.value;
  MatrixSpec m;
  m.kind = Kind::affine;
  for (auto& [key, value] : merged) {
    if (value != 0) m.terms.push_back({key.first, key.second, value});
  }
  if (m.terms.empty()) throw DomainError("affine matrix: no nonzero terms");
  return m;
}

MatrixSpec MatrixSpec::remark() {
  return affine({{2, -1, Rational(-1)}, {2, 0, Rational(2)}});
}

MatrixSpec MatrixSpec::factorial_style(GrowthRule growth, Rational first, Rational second) {
  if (growth.type == GrowthRule::Type::geometric && growth.ratio < 2) {
    throw DomainError("factorial-style matrix: geometric ratio must be >= 2");
  }
  MatrixSpec m;
  m.kind = Kind::factorial_style;
  m.growth = growth;
  m.first = std::move(first);
  m.second = std::move(second);
  return m;
}

std::string to_string(MatrixSpec::Kind kind) {
  switch (kind) {
    case MatrixSpec::Kind::identity: return "identity";
    case MatrixSpec::Kind::cesaro: return "cesaro";
    case MatrixSpec::Kind::holder: return "holder";
    case MatrixSpec::Kind::riesz_log: return "riesz-log";
    case MatrixSpec::Kind::sparse: return "sparse";
    case MatrixSpec::Kind::affine: return "affine";
    case MatrixSpec::Kind::subsequence: return "subsequence";
    case MatrixSpec::Kind::factorial_style: return "factorial-style";
  }
  return "?";
}

MatrixSpec::Kind matrix_kind_from_string(const std::string& name) {
  for (auto kind : {MatrixSpec::Kind::identity, MatrixSpec::Kind::cesaro, MatrixSpec::Kind::holder,
                    MatrixSpec::Kind::riesz_log, MatrixSpec::Kind::sparse, MatrixSpec::Kind::affine,
                    MatrixSpec::Kind::subsequence, MatrixSpec::Kind::factorial_style}) {
    if (to_string(kind) == name) return kind;
  }
  throw SchemaError("unknown matrix kind '" + name + "'");
}

std::string MatrixSpec::name() const {
  switch (kind) {
    case Kind::holder: return "holder(" + std::to_string(order) + ")";
    case Kind::subsequence: return "subsequence(" + rule.origin + ")";
    case Kind::factorial_style: return "factorial-style(" + growth.describe() + ")";
    default: return to_string(kind);
  }
}

bool MatrixSpec::closed_form() const { return kind != Kind::sparse; }

MatrixRow MatrixSpec::row(std::uint64_t n, bool with_exact) const {
  if (n == 0) throw DomainError("matrix rows start at 1");
  MatrixRow out;
  switch (kind) {
    case Kind::identity:
      return from_exact({n}, {Rational(1)}, with_exact);
    case Kind::cesaro: {
      out.cols.resize(n);
      for (std::uint64_t i = 0; i < n; ++i) out.cols[i] = i + 1;
      out.values.assign(n, 1.0 / static_cast<double>(n));
      if (with_exact) out.exact = std::vector<Rational>(n, Rational(1, n));
      return out;
    }
    case Kind::holder:
    case Kind::riesz_log: {
      out.cols.resize(n);
      for (std::uint64_t i = 0; i < n; ++i) out.cols[i] = i + 1;
      if (with_exact) {
        auto exact = kind == Kind::holder ? holder_weights<Rational>(n, order) : riesz_weights<Rational>(n);
        out.values = to_doubles(exact);
        out.exact = std::move(exact);
      } else {
        out.values = kind == Kind::holder ? holder_weights<double>(n, order) : riesz_weights<double>(n);
      }
      return out;
    }
    case Kind::sparse: {
      std::vector<std::uint64_t> cols;
      std::vector<Rational> exact;
      const auto lo = std::lower_bound(entries.begin(), entries.end(), n,
                                       [](const SparseEntry& e, std::uint64_t r) { return e.row < r; });
      for (auto it = lo; it != entries.end() && it->row == n; ++it) {
        cols.push_back(it->col);
        exact.push_back(it->value);
      }
      return from_exact(std::move(cols), std::move(exact), with_exact);
    }
    case Kind::affine: {
      std::map<std::uint64_t, Rational> cells;
      for (const auto& t : terms) {
        const auto col = affine_column(t.slope, t.offset, n);
        if (col >= 1) cells[static_cast<std::uint64_t>(col)] += t.value;
      }
      std::vector<std::uint64_t> cols;
      std::vector<Rational> exact;
      for (auto& [col, value] : cells) {
        if (value == 0) continue;
        cols.push_back(col);
        exact.push_back(value);
      }
      return from_exact(std::move(cols), std::move(exact), with_exact);
    }
    case Kind::subsequence:
      return from_exact({rule(n)}, {Rational(1)}, with_exact);
    case Kind::factorial_style: {
      const auto c1 = growth(2 * n - 1);
      const auto c2 = growth(2 * n);
      if (c2 == kSaturated) {
        throw DomainError("factorial-style row " + std::to_string(n) + " exceeds 64-bit column indices");
      }
      return from_exact({c1, c2}, {first, second}, with_exact);
    }
  }
  return out;
}

std::uint64_t MatrixSpec::reach(std::uint64_t n) const {
  switch (kind) {
    case Kind::identity:
    case Kind::cesaro:
    case Kind::holder:
    case Kind::riesz_log:
      return n;
    case Kind::sparse: {
      std::uint64_t last = 0;
      const auto lo = std::lower_bound(entries.begin(), entries.end(), n,
                                       [](const SparseEntry& e, std::uint64_t r) { return e.row < r; });
      for (auto it = lo; it != entries.end() && it->row == n; ++it) last = it->col;
      return last;
    }
    case Kind::affine: {
      std::int64_t last = 0;
      for (const auto& t : terms) last = std::max(last, affine_column(t.slope, t.offset, n));
      return static_cast<std::uint64_t>(last);
    }
    case Kind::subsequence: {
      const auto len = rule.length();
      if (len && n > *len) return kSaturated;
      return rule(n);
    }
    case Kind::factorial_style:
      return growth(2 * n);
  }
  return 0;
}

std::optional<std::uint64_t> MatrixSpec::last_row() const {
  if (kind == Kind::sparse) return entries.empty() ? 0 : entries.back().row;
  if (kind == Kind::subsequence) return rule.length();
  return std::nullopt;
}

MatrixSpec subsequence_matrix(SubsequenceRule rule) {
  rule.validate();
  MatrixSpec m;
  m.kind = MatrixSpec::Kind::subsequence;
  m.rule = std::move(rule);
  return m;
}

std::uint64_t rows_within(const MatrixSpec& matrix, std::uint64_t horizon) {
  using Kind = MatrixSpec::Kind;
  if (matrix.kind == Kind::identity || matrix.kind == Kind::cesaro || matrix.kind == Kind::holder ||
      matrix.kind == Kind::riesz_log) {
    return horizon;
  }
  if (matrix.kind == Kind::subsequence && matrix.rule.type == SubsequenceRule::Type::affine) {
    const auto top = static_cast<std::int64_t>(horizon) - matrix.rule.offset;
    return top <= 0 ? 0 : static_cast<std::uint64_t>(top) / matrix.rule.slope;
  }
  const auto last = matrix.last_row();
  std::uint64_t n = 0;
  while ((!last || n < *last) && matrix.reach(n + 1) <= horizon) ++n;
  return n;
}

RegularityReport st_check(const MatrixSpec& matrix, std::uint64_t row_horizon, std::uint64_t col_horizon,
                          double tol) {
  if (row_horizon == 0 || col_horizon == 0) throw DomainError("st_check: horizons must be >= 1");
  if (!(tol >= 0.0)) throw DomainError("st_check: tol must be >= 0");
  using Kind = MatrixSpec::Kind;

  RegularityReport r;
  r.matrix = matrix.name();
  r.row_horizon = row_horizon;
  r.col_horizon = col_horizon;
  r.tol = tol;
  r.closed_form = matrix.closed_form();

  if (r.closed_form) {
    Rational row_sum(1);
    Rational abs_sum(1);
    bool columns = true;
    switch (matrix.kind) {
      case Kind::identity:
      case Kind::cesaro:
      case Kind::holder:
      case Kind::riesz_log:
        r.witnesses.push_back("nonnegative rows summing to 1 with entries a_{n,i} -> 0");
        break;
      case Kind::subsequence:
        r.horizon_limited = matrix.rule.type == SubsequenceRule::Type::list;
        r.witnesses.push_back("one unit entry per row at strictly increasing columns");
        if (r.horizon_limited) {
          r.witnesses.push_back("rule is a finite prefix of " + std::to_string(matrix.rule.indices.size()) +
                                " terms; regularity assumes it continues increasing");
        }
        break;
      case Kind::affine:
        row_sum = 0;
        abs_sum = 0;
        for (const auto& t : matrix.terms) {
          row_sum += t.value;
          abs_sum += abs(t.value);
          if (t.slope == 0) {
            columns = false;
            r.witnesses.push_back("column " + std::to_string(t.offset) + " keeps value " +
                                  format_rational(t.value) + " in every row");
          }
        }
        r.witnesses.push_back("row sums are " + format_rational(row_sum) + " and absolute row sums " +
                              format_rational(abs_sum) + " once all columns are >= 1");
        break;
      case Kind::factorial_style:
        row_sum = matrix.first + matrix.second;
        abs_sum = abs(matrix.first) + abs(matrix.second);
        r.witnesses.push_back("row n is " + format_rational(matrix.first) + " at g(2n-1) and " +
                              format_rational(matrix.second) + " at g(2n), g = " + matrix.growth.describe());
        break;
      case Kind::sparse:
        break;
    }
    r.sup_row_norm = to_double(abs_sum);
    r.row_sum_limit = to_double(row_sum);
    r.strong_norm_limit = to_double(abs_sum);
    r.max_tail_column = 0.0;
    r.bounded = true;
    r.columns_vanish = columns;
    r.row_sums_to_one = row_sum == 1;
    r.strong = columns && abs_sum == 1;
  } else {
    r.horizon_limited = true;
    std::uint64_t rows = row_horizon;
    if (const auto last = matrix.last_row()) rows = std::min(rows, *last);
    if (rows == 0) throw DomainError("st_check: matrix has no rows");
    const std::uint64_t tail_start = rows - rows / 4;

    std::vector<MatrixRow> evaluated(rows);
    parallel_for(rows, [&](std::size_t i) { evaluated[i] = matrix.row(i + 1); });

    r.row_sums_to_one = true;
    r.strong = true;
    for (std::uint64_t n = 1; n <= rows; ++n) {
      const auto& row = evaluated[n - 1];
      const double s = row.sum();
      const double a = row.abs_sum();
      r.sup_row_norm = std::max(r.sup_row_norm, a);
      if (n < tail_start) continue;
      if (r.row_sums_to_one && std::abs(s - 1.0) > tol) {
        r.row_sums_to_one = false;
        r.witnesses.push_back("row " + std::to_string(n) + " sums to " + fmt(s));
      }
      if (r.strong && std::abs(a - 1.0) > tol) {
        r.strong = false;
        r.witnesses.push_back("row " + std::to_string(n) + " has absolute sum " + fmt(a));
      }
      for (std::size_t j = 0; j < row.cols.size() && row.cols[j] <= col_horizon; ++j) {
        if (std::abs(row.values[j]) > r.max_tail_column) r.max_tail_column = std::abs(row.values[j]);
      }
    }
    r.row_sum_limit = evaluated.back().sum();
    r.strong_norm_limit = evaluated.back().abs_sum();
    r.bounded = std::isfinite(r.sup_row_norm);
    r.columns_vanish = r.max_tail_column <= tol;
    if (!r.columns_vanish) {
      r.witnesses.push_back("a column <= " + std::to_string(col_horizon) + " still carries " +
                            fmt(r.max_tail_column) + " in rows >= " + std::to_string(tail_start));
    }
    r.strong = r.strong && r.columns_vanish;
    r.witnesses.push_back("window verdict: rows 1.." + std::to_string(rows) + ", columns 1.." +
                          std::to_string(col_horizon) + "; consistent up to horizon, not a limit");
  }
  r.regular = r.bounded && r.columns_vanish && r.row_sums_to_one;
  return r;
}

Trajectory transform(const MatrixSpec& matrix, const Trajectory& x, std::uint64_t n_first,
                     std::uint64_t n_last) {
  if (n_first == 0 || n_last < n_first) throw DomainError("transform: invalid row range");
  using Kind = MatrixSpec::Kind;
  const std::size_t d = x.dim();
  const std::size_t count = n_last - n_first + 1;
  std::vector<double> out(count * d, 0.0);

  const bool prefix_kind = matrix.kind == Kind::identity || matrix.kind == Kind::cesaro ||
                           matrix.kind == Kind::holder || matrix.kind == Kind::riesz_log;
  if (prefix_kind && x.is_dense()) {
    if (n_last > x.size()) {
      throw DomainError("transform: row " + std::to_string(n_last) + " needs x_1..x_" +
                        std::to_string(n_last) + " but the trajectory ends at " +
                        std::to_string(x.size()));
    }
    const auto& flat = x.flat();
    std::vector<double> current(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(n_last * d));
    const unsigned passes = matrix.kind == Kind::identity ? 0 : matrix.kind == Kind::holder ? matrix.order : 1;
    for (unsigned pass = 0; pass < passes; ++pass) {
      std::vector<double> acc(d, 0.0);
      double weight = 0.0;
      for (std::uint64_t n = 1; n <= n_last; ++n) {
        const double w = matrix.kind == Kind::riesz_log ? 1.0 / static_cast<double>(n) : 1.0;
        weight += w;
        for (std::size_t s = 0; s < d; ++s) {
          acc[s] += w * current[(n - 1) * d + s];
          current[(n - 1) * d + s] = acc[s] / weight;
        }
      }
    }
    std::copy(current.begin() + static_cast<std::ptrdiff_t>((n_first - 1) * d), current.end(), out.begin());
  } else {
    parallel_for(count, [&](std::size_t pos) {
      const std::uint64_t n = n_first + pos;
      const auto row = matrix.row(n);
      for (std::size_t j = 0; j < row.cols.size(); ++j) {
        const auto value = x.at_index(row.cols[j]);
        if (!value) {
          throw DomainError("transform: row " + std::to_string(n) + " needs x_" + std::to_string(row.cols[j]) +
                            ", which the trajectory lacks");
        }
        for (std::size_t s = 0; s < d; ++s) out[pos * d + s] += row.values[j] * (*value)[s];
      }
    });
  }

  Trajectory result(d);
  for (std::size_t pos = 0; pos < count; ++pos) {
    result.push_back(n_first + pos, std::span<const double>(out.data() + pos * d, d));
  }
  return result;
}

std::vector<std::vector<Rational>> transform_exact(const MatrixSpec& matrix,
                                                   const std::vector<std::vector<Rational>>& x,
                                                   std::uint64_t n_first, std::uint64_t n_last) {
  if (n_first == 0 || n_last < n_first) throw DomainError("transform: invalid row range");
  if (x.empty()) throw DomainError("transform: empty trajectory");
  const std::size_t d = x.front().size();
  for (const auto& v : x) {
    if (v.size() != d) throw DomainError("transform: ragged trajectory");
  }
  std::vector<std::vector<Rational>> out(n_last - n_first + 1, std::vector<Rational>(d, Rational(0)));
  parallel_for(out.size(), [&](std::size_t pos) {
    const std::uint64_t n = n_first + pos;
    const auto row = matrix.row(n, true);
    for (std::size_t j = 0; j < row.cols.size(); ++j) {
      if (row.cols[j] > x.size()) {
        throw DomainError("transform: row " + std::to_string(n) + " needs x_" + std::to_string(row.cols[j]) +
                          ", which the trajectory lacks");
      }
      for (std::size_t s = 0; s < d; ++s) out[pos][s] += (*row.exact)[j] * x[row.cols[j] - 1][s];
    }
  });
  return out;
}

std::vector<std::vector<double>> CoreEstimate::points() const {
  std::vector<std::vector<double>> pts;
  pts.reserve(candidates.size());
  for (const auto& c : candidates) pts.push_back(c.point);
  return pts;
}

CoreEstimate knopp_core_estimate(const Trajectory& x, double eps, std::uint64_t tail_cutoff,
                                 std::uint64_t min_recurrence) {
  if (!(eps > 0.0)) throw DomainError("knopp_core_estimate: eps must be > 0");
  const std::size_t d = x.dim();
  CoreEstimate est;
  est.dim = d;
  est.eps = eps;
  est.tail_cutoff = tail_cutoff;
  est.min_recurrence = min_recurrence;
  est.horizon = x.max_index();

  struct Cell {
    std::vector<double> center;
    std::vector<double> sum;
    std::uint64_t count = 0;
  };
  std::vector<Cell> cells;
  std::size_t tail = 0;
  for (std::size_t pos = 0; pos < x.size(); ++pos) {
    if (x.index(pos) <= tail_cutoff) continue;
    const auto p = x[pos];
    for (double v : p) {
      if (!std::isfinite(v)) throw DomainError("knopp_core_estimate: unbounded trajectory");
    }
    ++tail;
    auto it = std::find_if(cells.begin(), cells.end(),
                           [&](const Cell& c) { return euclidean_distance(c.center, p) <= eps; });
    if (it == cells.end()) {
      cells.push_back({std::vector<double>(p.begin(), p.end()), std::vector<double>(d, 0.0), 0});
      it = cells.end() - 1;
    }
    for (std::size_t s = 0; s < d; ++s) it->sum[s] += p[s];
    ++it->count;
  }
  if (tail == 0) throw DomainError("knopp_core_estimate: no points beyond the tail cutoff");

  struct Mean {
    std::vector<double> point;
    std::vector<double> sum;
    std::uint64_t count;
  };
  std::vector<Mean> means;
  for (auto& c : cells) {
    if (c.count < min_recurrence) continue;
    std::vector<double> m(d);
    for (std::size_t s = 0; s < d; ++s) m[s] = c.sum[s] / static_cast<double>(c.count);
    means.push_back({std::move(m), std::move(c.sum), c.count});
  }

  // Merge the closest pair below eps until none remains.
  for (;;) {
    double best = eps;
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < means.size(); ++i) {
      for (std::size_t j = i + 1; j < means.size(); ++j) {
        const double dist = euclidean_distance(means[i].point, means[j].point);
        if (dist < best) {
          best = dist;
          bi = i;
          bj = j;
        }
      }
    }
    if (best >= eps) break;
    auto& a = means[bi];
    a.count += means[bj].count;
    for (std::size_t s = 0; s < d; ++s) {
      a.sum[s] += means[bj].sum[s];
      a.point[s] = a.sum[s] / static_cast<double>(a.count);
    }
    means.erase(means.begin() + static_cast<std::ptrdiff_t>(bj));
  }

  std::sort(means.begin(), means.end(), [](const Mean& a, const Mean& b) { return a.point < b.point; });
  for (auto& m : means) est.candidates.push_back({std::move(m.point), m.count});
  return est;
}

std::string InclusionReport::verdict() const {
  return holds ? "inclusion holds (within eps)" : "violated by " + fmt(max_violation);
}

InclusionReport check_core_inclusion(const MatrixSpec& matrix, const Trajectory& x,
                                     const InclusionParams& params) {
  if (x.empty()) throw DomainError("check_core_inclusion: empty trajectory");
  const std::uint64_t horizon = x.max_index();
  const std::uint64_t rows = rows_within(matrix, horizon);
  if (rows == 0) throw DomainError("check_core_inclusion: no matrix row fits inside the trajectory");

  InclusionReport report;
  report.matrix = matrix.name();
  report.rows_used = rows;
  report.original = knopp_core_estimate(x, params.eps, params.original_cutoff.value_or(horizon / 2),
                                        params.min_recurrence);
  const auto ax = transform(matrix, x, 1, rows);
  report.transformed = knopp_core_estimate(ax, params.eps, params.transformed_cutoff.value_or(rows / 2),
                                           params.transformed_min_recurrence);
  if (report.original.candidates.empty()) {
    throw DomainError("check_core_inclusion: no recurrent points in the original tail");
  }
  const auto hull = report.original.points();
  for (const auto& c : report.transformed.candidates) {
    const double v = dist_to_hull(c.point, hull);
    if (report.worst_point.empty() || v > report.max_violation) {
      report.max_violation = v;
      report.worst_point = c.point;
    }
  }
  report.holds = report.max_violation <= params.eps;
  return report;
}

}  // namespace normality
