#include "normality/errors.hpp"
#include "normality/freq.hpp"
#include "normality/hull.hpp"
#include "normality/summability.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace normality;
using Catch::Matchers::WithinAbs;

namespace {

Trajectory alternating(std::uint64_t n) {
  std::vector<double> v;
  for (std::uint64_t i = 1; i <= n; ++i) v.push_back(i % 2 == 0 ? 1.0 : -1.0);
  return Trajectory::scalar(v);
}

Trajectory constant(std::vector<double> c, std::uint64_t n) {
  Trajectory t(c.size());
  for (std::uint64_t i = 1; i <= n; ++i) t.push_back(i, c);
  return t;
}

}  // namespace

TEST_CASE("st_check examples", "[summability]") {
  const auto ces = st_check(MatrixSpec::cesaro());
  CHECK(ces.closed_form);
  CHECK(ces.regular);
  CHECK(ces.strong);
  CHECK(ces.strong_norm_limit == 1.0);

  const auto id = st_check(MatrixSpec::identity());
  CHECK(id.regular);
  CHECK(id.strong_norm_limit == 1.0);

  const auto rem = st_check(MatrixSpec::remark());
  CHECK(rem.regular);
  CHECK_FALSE(rem.strong);
  CHECK(rem.strong_norm_limit == 3.0);
  CHECK(rem.row_sum_limit == 1.0);

  // The same matrix as a finite entry list is judged on a window only.
  std::vector<SparseEntry> entries;
  for (std::uint64_t n = 1; n <= 400; ++n) {
    entries.push_back({n, 2 * n - 1, Rational(-1)});
    entries.push_back({n, 2 * n, Rational(2)});
  }
  const auto sp = st_check(MatrixSpec::sparse(entries), 400, 50);
  CHECK(sp.horizon_limited);
  CHECK(sp.regular);
  CHECK_THAT(sp.strong_norm_limit, WithinAbs(3.0, 1e-12));

  for (const auto& m : {MatrixSpec::holder(2), MatrixSpec::riesz_log(),
                        subsequence_matrix(SubsequenceRule::affine(2, 0)),
                        MatrixSpec::factorial_style({GrowthRule::Type::geometric, 20})}) {
    const auto r = st_check(m);
    INFO(m.name());
    CHECK(r.regular);
  }
  CHECK(st_check(MatrixSpec::factorial_style({GrowthRule::Type::geometric, 20})).strong_norm_limit == 3.0);
  // Constant column: a_{n,1} = 1 for every n is not regular.
  const auto stuck = st_check(MatrixSpec::affine({{0, 1, Rational(1)}}));
  CHECK_FALSE(stuck.columns_vanish);
  CHECK_FALSE(stuck.regular);
  const auto doubled = st_check(MatrixSpec::affine({{1, 0, Rational(2)}}));
  CHECK_FALSE(doubled.row_sums_to_one);
}

TEST_CASE("matrix construction rules", "[summability]") {
  const auto m = MatrixSpec::sparse({{1, 2, Rational(1)}, {1, 2, Rational(1)}, {1, 1, Rational(0)}});
  REQUIRE(m.entries.size() == 1);
  CHECK_THROWS_AS(MatrixSpec::sparse({{1, 2, Rational(1)}, {1, 2, Rational(2)}}), DomainError);
  CHECK_THROWS_AS(SubsequenceRule::list({1, 3, 3}).validate(), DomainError);
  CHECK_THROWS_AS(subsequence_matrix(SubsequenceRule::list({4, 2})), DomainError);
  CHECK_THROWS_AS(MatrixSpec::holder(0), DomainError);
  CHECK_THROWS_AS(matrix_kind_from_string("toeplitz"), SchemaError);
  CHECK(matrix_kind_from_string("riesz-log") == MatrixSpec::Kind::riesz_log);

  const auto row = MatrixSpec::cesaro().row(4, true);
  CHECK(row.cols == std::vector<std::uint64_t>{1, 2, 3, 4});
  REQUIRE(row.exact);
  CHECK((*row.exact)[0] == make_rational(1, 4));
  const auto h = MatrixSpec::holder(2).row(3, true);
  // (1/3)(1 + 1/2 + 1/3, 1/2 + 1/3, 1/3)
  CHECK((*h.exact)[0] == make_rational(11, 18));
  CHECK((*h.exact)[2] == make_rational(1, 9));
  Rational total = 0;
  const auto riesz = MatrixSpec::riesz_log().row(7, true);
  for (const auto& v : *riesz.exact) total += v;
  CHECK(total == 1);
  CHECK(rows_within(MatrixSpec::remark(), 100) == 50);
}

TEST_CASE("transform examples", "[summability]") {
  const auto x = alternating(1000);
  const auto ces = transform(MatrixSpec::cesaro(), x, 4, 4);
  CHECK(ces[0][0] == 0.0);
  const auto rem = transform(MatrixSpec::remark(), x, 1, 500);
  for (std::size_t i = 0; i < rem.size(); ++i) REQUIRE(rem[i][0] == 3.0);
  const auto id = transform(MatrixSpec::identity(), x, 1, 1000);
  CHECK(id.flat() == x.flat());
  CHECK_THROWS_AS(transform(MatrixSpec::remark(), x, 1, 501), DomainError);

  std::vector<std::vector<Rational>> exact;
  for (int i = 1; i <= 40; ++i) exact.push_back({Rational(i % 2 == 0 ? 1 : -1)});
  for (const auto& v : transform_exact(MatrixSpec::remark(), exact, 1, 20)) REQUIRE(v[0] == 3);
  CHECK(transform_exact(MatrixSpec::cesaro(), exact, 3, 3)[0][0] == make_rational(-1, 3));
}

TEST_CASE("dense fast paths match the generic row evaluation", "[summability]") {
  std::mt19937_64 rng(61);
  std::vector<double> v(600);
  for (auto& e : v) e = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  const auto x = Trajectory::dense(2, v);
  for (const auto& m : {MatrixSpec::identity(), MatrixSpec::cesaro(), MatrixSpec::holder(3), MatrixSpec::riesz_log()}) {
    const auto fast = transform(m, x, 1, 300);
    for (std::uint64_t n : {1, 17, 150, 300}) {
      const auto row = m.row(n);
      for (std::size_t s = 0; s < 2; ++s) {
        double acc = 0.0;
        for (std::size_t j = 0; j < row.cols.size(); ++j) acc += row.values[j] * x[row.cols[j] - 1][s];
        REQUIRE_THAT(fast[n - 1][s], WithinAbs(acc, 1e-12));
      }
    }
  }
}

TEST_CASE("subsequence matrices", "[summability]") {
  const auto evens = transform(subsequence_matrix(SubsequenceRule::affine(2, 0)), alternating(1000), 1, 500);
  for (std::size_t i = 0; i < evens.size(); ++i) REQUIRE(evens[i][0] == 1.0);

  const auto idm = subsequence_matrix(SubsequenceRule::affine(1, 0));
  for (std::uint64_t n : {1, 5, 99}) {
    const auto row = idm.row(n);
    CHECK(row.cols == std::vector<std::uint64_t>{n});
    CHECK(row.values == std::vector<double>{1.0});
  }

  const auto pi = frequency_path(DigitStream::periodic(2, {0, 1}), 1, 2000);
  const auto y = transform(subsequence_matrix(SubsequenceRule::affine(2, 0)), pi, 1, 1000);
  for (std::size_t i = 0; i < y.size(); ++i) {
    REQUIRE(y[i][0] == 0.5);
    REQUIRE(y[i][1] == 0.5);
  }
  const auto ones = SubsequenceRule::digit_positions(DigitStream::periodic(2, {0, 1}), 1, 20);
  CHECK(ones.indices == std::vector<std::uint64_t>{2, 4, 6, 8, 10, 12, 14, 16, 18, 20});
  CHECK(ones.length() == 10u);
  CHECK_THROWS_AS(ones(11), DomainError);
}

TEST_CASE("knopp_core_estimate examples", "[summability]") {
  const auto alt = knopp_core_estimate(alternating(1000), 0.05, 500, 10);
  REQUIRE(alt.candidates.size() == 2);
  CHECK(alt.candidates[0].point == std::vector<double>{-1.0});
  CHECK(alt.candidates[1].point == std::vector<double>{1.0});
  CHECK(alt.candidates[0].recurrence == 250);

  const auto c = knopp_core_estimate(constant({0.3, 0.7}, 200), 0.05, 100, 10);
  REQUIRE(c.candidates.size() == 1);
  CHECK_THAT(c.candidates[0].point[0], WithinAbs(0.3, 1e-12));

  const auto pi = frequency_path(DigitStream::periodic(2, {0, 0, 0, 0, 1, 1}), 2, 20000);
  const auto one = knopp_core_estimate(pi, 0.05, 10000, 10);
  REQUIRE(one.candidates.size() == 1);
  const std::vector<double> target{0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6};
  CHECK(euclidean_distance(one.candidates[0].point, target) < 1e-3);

  CHECK_THROWS_AS(knopp_core_estimate(alternating(10), 0.05, 10, 1), DomainError);
  CHECK_THROWS_AS(knopp_core_estimate(alternating(10), 0.0, 0, 1), DomainError);
}

TEST_CASE("core candidates are eps-separated and recurrent", "[summability]") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    std::vector<double> v(3000 * d);
    for (auto& e : v) e = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double eps = std::uniform_real_distribution<double>(0.05, 0.4)(rng);
    const auto core = knopp_core_estimate(Trajectory::dense(d, v), eps, 1000, 10);
    for (std::size_t i = 0; i < core.candidates.size(); ++i) {
      REQUIRE(core.candidates[i].recurrence >= 10);
      for (std::size_t j = i + 1; j < core.candidates.size(); ++j) {
        REQUIRE(euclidean_distance(core.candidates[i].point, core.candidates[j].point) >= eps);
      }
    }
  }
}

TEST_CASE("core inclusion examples", "[summability]") {
  const auto x = alternating(10000);
  const auto ces = check_core_inclusion(MatrixSpec::cesaro(), x);
  REQUIRE(ces.transformed.candidates.size() == 1);
  CHECK_THAT(ces.transformed.candidates[0].point[0], WithinAbs(0.0, 1e-3));
  CHECK(ces.max_violation < 1e-12);
  CHECK(ces.holds);
  CHECK(ces.verdict() == "inclusion holds (within eps)");

  const auto rem = check_core_inclusion(MatrixSpec::remark(), x);
  REQUIRE(rem.transformed.candidates.size() == 1);
  CHECK(rem.transformed.candidates[0].point[0] == 3.0);
  CHECK_THAT(rem.max_violation, WithinAbs(2.0, 1e-9));
  CHECK(rem.max_violation >= 1.9);
  CHECK_FALSE(rem.holds);
  CHECK(rem.verdict().rfind("violated by 2", 0) == 0);
}

TEST_CASE("factorial-style rows push pi outside [0, 1]", "[summability]") {
  const GrowthRule growth{GrowthRule::Type::geometric, 20};
  const auto stream = DigitStream::alternating_runs(2, {growth, 1, 0});
  const auto matrix = MatrixSpec::factorial_style(growth);
  const std::uint64_t horizon = 160000;
  REQUIRE(rows_within(matrix, horizon) == 2);
  const auto pi = frequency_path(stream, 1, horizon);
  const auto ax = transform(matrix, pi, 1, 2);
  const double limit = 39.0 / 21.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    CHECK_THAT(ax[i][1], WithinAbs(limit, 0.05));
    CHECK(ax[i][1] > 1.0);
  }
}

TEST_CASE("regular matrices preserve limits of convergent sequences", "[summability]") {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::uint64_t horizon = 10000;
  const std::vector<MatrixSpec> sharp{MatrixSpec::identity(), MatrixSpec::cesaro(), MatrixSpec::holder(2),
                                      subsequence_matrix(SubsequenceRule::affine(2, 0)),
                                      subsequence_matrix(SubsequenceRule::affine(3, -1))};
  // Third-order Holder and log-Riesz means converge like (log n)^2 / n and
  // 1 / log n, so 1e-3 at 10^4 is out of reach; they get an explicit envelope.
  const std::vector<MatrixSpec> slow{MatrixSpec::holder(3), MatrixSpec::riesz_log()};
  for (int trial = 0; trial < 100; ++trial) {
    // x_n = L + c rho^n: partial sums of |x_n - L| stay below |c| rho / (1 - rho) <= 0.4.
    const double limit = 4.0 * u(rng) - 2.0;
    const double c = 0.8 * u(rng) - 0.4;
    const double rho = 0.5 * u(rng);
    std::vector<double> v(horizon);
    double power = 1.0;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
      power *= rho;
      v[n - 1] = limit + c * power;
    }
    const auto x = Trajectory::scalar(v);
    for (const auto& m : sharp) {
      const auto rows = std::min<std::uint64_t>(horizon, rows_within(m, horizon));
      const auto ax = transform(m, x, 1, rows);
      INFO(m.name());
      REQUIRE(std::abs(ax[rows - 1][0] - limit) <= 1e-3);
      REQUIRE(std::abs(ax[rows - 1][0] - limit) <= std::abs(ax[rows / 100][0] - limit) + 1e-15);
    }
    for (const auto& m : slow) {
      const auto ax = transform(m, x, 1, horizon);
      const double d2 = std::abs(ax[99][0] - limit);
      const double d3 = std::abs(ax[999][0] - limit);
      const double d4 = std::abs(ax[horizon - 1][0] - limit);
      INFO(m.name());
      REQUIRE(d4 <= d3 + 1e-15);
      REQUIRE(d3 <= d2 + 1e-15);
      // sum_i |x_i - L| / i over H_n bounds the log-Riesz deviation;
      // (sum_i |x_i - L|) (log n)^2 / n bounds the third Holder mean.
      double weighted = 0.0;
      double plain = 0.0;
      double harmonic = 0.0;
      for (std::uint64_t i = 1; i <= horizon; ++i) {
        weighted += std::abs(v[i - 1] - limit) / static_cast<double>(i);
        plain += std::abs(v[i - 1] - limit);
        harmonic += 1.0 / static_cast<double>(i);
      }
      const double envelope = m.kind == MatrixSpec::Kind::riesz_log
                                  ? weighted / harmonic
                                  : plain * harmonic * harmonic / static_cast<double>(horizon);
      REQUIRE(d4 <= envelope + 1e-12);
    }
  }
}

TEST_CASE("nonnegative regular matrices keep the core", "[summability]") {
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::uint64_t horizon = 4000;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 1 + rng() % 4;
    const std::size_t m = 1 + rng() % 4;
    std::vector<std::vector<double>> values(m, std::vector<double>(d));
    for (auto& p : values) {
      for (auto& e : p) e = 2.0 * u(rng) - 1.0;
    }
    Trajectory x(d);
    for (std::uint64_t n = 1; n <= horizon; ++n) {
      auto p = values[rng() % m];
      for (auto& e : p) e += (u(rng) - 0.5) / static_cast<double>(n);
      x.push_back(n, p);
    }
    std::vector<SparseEntry> entries;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
      const std::uint64_t width = 1 + rng() % 5;
      const std::uint64_t lo = std::max<std::uint64_t>(1, n / 2);
      std::vector<std::uint64_t> cols;
      for (std::uint64_t j = 0; j < width; ++j) cols.push_back(lo + rng() % (n - lo + 1));
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      for (auto col : cols) entries.push_back({n, col, make_rational(1, static_cast<std::int64_t>(cols.size()))});
    }
    const auto matrix = MatrixSpec::sparse(entries);
    REQUIRE(st_check(matrix, horizon, 50).regular);
    InclusionParams params;
    params.eps = 0.05;
    const auto r = check_core_inclusion(matrix, x, params);
    REQUIRE(r.max_violation <= 0.05);
  }
}
