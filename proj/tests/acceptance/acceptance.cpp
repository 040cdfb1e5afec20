// Acceptance suite: one PASS/FAIL line per criterion. `acceptance` runs all
// of them; `acceptance N` runs criterion N only. Exit status is nonzero when
// any selected criterion fails.

#include "support/oracles.hpp"

#include "normality/digits.hpp"
#include "normality/freq.hpp"
#include "normality/hull.hpp"
#include "normality/ideals.hpp"
#include "normality/simplex.hpp"
#include "normality/summability.hpp"
#include "normality/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace normality;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

SimplexPoint point(unsigned b, unsigned k, std::initializer_list<std::pair<int, int>> v) {
  std::vector<Rational> e;
  for (auto [p, q] : v) e.push_back(make_rational(p, q));
  return SimplexPoint::make(b, k, std::move(e));
}

// Exact structural identities over random streams.
Outcome ac1() {
  std::mt19937_64 rng(1001);
  const unsigned bases[] = {2, 3, 10};
  std::size_t sum_fail = 0;
  std::size_t right_fail = 0;
  std::size_t left_fail = 0;
  double worst_left = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const unsigned b = bases[rng() % 3];
    const unsigned k = 1 + static_cast<unsigned>(rng() % 3);
    const std::uint64_t n = 1 + rng() % 10000;
    const auto digits = take(DigitStream::random(b, rng()), n + k);
    const auto v = freq_vector(digits, b, k, n);
    Rational total = 0;
    for (const auto& e : v.exact_entries()) total += e;
    sum_fail += total != 1;
    if (k < 2) continue;
    const auto shorter = freq_vector(digits, b, k - 1, n);
    right_fail += right_marginal(v) != shorter.counts;
    const auto left = left_marginal(v);
    for (std::size_t s = 0; s < left.size(); ++s) {
      const double dev = std::abs(static_cast<double>(left[s]) - static_cast<double>(shorter.counts[s])) /
                         static_cast<double>(n);
      worst_left = std::max(worst_left, dev * static_cast<double>(n));
      left_fail += dev > 2.0 / static_cast<double>(n);
    }
  }
  return {sum_fail == 0 && right_fail == 0 && left_fail == 0,
          "1000 streams: sum!=1 in " + std::to_string(sum_fail) + ", right coupling broken in " +
              std::to_string(right_fail) + ", left deviation > 2/n in " + std::to_string(left_fail) +
              " (worst n*dev " + fmt(worst_left) + ")"};
}

// Synthesizer fidelity on every connected target with denominator <= 8.
Outcome ac2() {
  std::size_t targets = 0;
  std::size_t exact_fail = 0;
  double worst = 0.0;
  for (const auto& target : enumerate_rationals(2, 2, 8)) {
    const auto g = debruijn_multigraph(target);
    if (!g.connected()) continue;
    ++targets;
    const auto digits = take(synthesize(target), 100001);
    for (std::uint64_t m = 1; m * g.denominator <= 10000; m += 7) {
      exact_fail += freq_vector(digits, 2, 2, m * g.denominator).exact_entries() != target.entries;
    }
    worst = std::max(worst, distance(freq_vector(digits, 2, 2, 100000).values(), target));
  }
  return {targets > 0 && exact_fail == 0 && worst <= 0.02,
          std::to_string(targets) + " connected targets; exact mismatches at n = N*m: " + std::to_string(exact_fail) +
              "; max distance at n = 1e5: " + fmt(worst) + " (limit 0.02)"};
}

// Seeded uniform stream is empirically normal at n = 10^6.
Outcome ac3() {
  const std::uint64_t n = 1000000;
  const auto digits = take(DigitStream::random(2, 20240601), n + 2);
  double worst = 0.0;
  for (unsigned k = 1; k <= 3; ++k) {
    const auto v = freq_vector(digits, 2, k, n);
    for (std::size_t s = 0; s < v.counts.size(); ++s) worst = std::max(worst, std::abs(v.value(s) - std::ldexp(1.0, -static_cast<int>(k))));
  }
  return {worst <= 0.01, "max |pi_s - 2^-k| over k <= 3: " + fmt(worst) + " (limit 0.01)"};
}

// The strong-norm counterexample, exactly.
Outcome ac4() {
  const auto matrix = MatrixSpec::remark();
  std::vector<std::vector<Rational>> exact;
  for (int i = 1; i <= 2000; ++i) exact.push_back({Rational(i % 2 == 0 ? 1 : -1)});
  bool all_three = true;
  for (const auto& v : transform_exact(matrix, exact, 1, 1000)) all_three = all_three && v[0] == 3;
  const auto reg = st_check(matrix);
  std::vector<double> x;
  for (int i = 1; i <= 10000; ++i) x.push_back(i % 2 == 0 ? 1.0 : -1.0);
  const auto inc = check_core_inclusion(matrix, Trajectory::scalar(x));
  const bool pass = all_three && reg.regular && reg.strong_norm_limit == 3.0 && std::abs(inc.max_violation - 2.0) <= 1e-9;
  return {pass, std::string("A_n x = 3 exactly for n <= 1000: ") + (all_three ? "yes" : "no") +
                    "; regular " + (reg.regular ? "true" : "false") + ", strong norm " + fmt(reg.strong_norm_limit) +
                    "; violation " + fmt(inc.max_violation)};
}

// Inclusion for random nonnegative regular matrices.
Outcome ac5() {
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::uint64_t horizon = 10000;
  double worst = 0.0;
  std::size_t irregular = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + rng() % 4;
    const std::size_t m = 1 + rng() % 4;
    std::vector<std::vector<double>> values(m, std::vector<double>(d));
    for (auto& p : values) {
      for (auto& e : p) e = 2.0 * u(rng) - 1.0;
    }
    // Bounded, with accumulation values exactly the chosen points.
    Trajectory x(d);
    for (std::uint64_t n = 1; n <= horizon; ++n) {
      auto p = values[rng() % m];
      for (auto& e : p) e += (u(rng) - 0.5) / std::sqrt(static_cast<double>(n));
      x.push_back(n, p);
    }
    // Rows: random positive weights on a few columns drifting right, summing to 1.
    std::vector<SparseEntry> entries;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
      const std::uint64_t width = 1 + rng() % 6;
      const std::uint64_t lo = std::max<std::uint64_t>(1, n - n / 3);
      std::vector<std::uint64_t> cols;
      for (std::uint64_t j = 0; j < width; ++j) cols.push_back(lo + rng() % (n - lo + 1));
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      std::vector<std::int64_t> w(cols.size());
      std::int64_t total = 0;
      for (auto& v : w) total += (v = 1 + static_cast<std::int64_t>(rng() % 9));
      for (std::size_t j = 0; j < cols.size(); ++j) entries.push_back({n, cols[j], make_rational(w[j], total)});
    }
    const auto matrix = MatrixSpec::sparse(entries);
    irregular += !st_check(matrix, horizon, 100).regular;
    const auto r = check_core_inclusion(matrix, x);
    worst = std::max(worst, r.max_violation);
  }
  return {worst <= 0.05 && irregular == 0, "50 matrices (" + std::to_string(irregular) +
                                               " failing the window check): max violation " + fmt(worst) +
                                               " (limit 0.05)"};
}

// Factorial-style rows at geometric scale r = 20.
Outcome ac6() {
  const std::uint64_t ratio = 20;
  const std::uint64_t horizon = 10000000;
  const GrowthRule growth{GrowthRule::Type::geometric, ratio};
  const auto stream = DigitStream::alternating_runs(2, {growth, 1, 0});
  const auto matrix = MatrixSpec::factorial_style(growth);
  const auto rows = rows_within(matrix, horizon);
  std::vector<std::uint64_t> horizons;
  for (std::uint64_t n = 1; n <= rows; ++n) {
    horizons.push_back(growth(2 * n - 1));
    horizons.push_back(growth(2 * n));
  }
  const auto pi = to_trajectory(freq_trajectory(stream, 1, horizons));
  const double limit = (2.0 * ratio - 1.0) / (ratio + 1.0);
  const auto ax = transform(matrix, pi, 1, rows);
  double worst = 0.0;
  bool outside = true;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    worst = std::max(worst, std::abs(ax[i][1] - limit));
    outside = outside && ax[i][1] > 1.0;
  }
  InclusionParams params;
  params.original_cutoff = 0;
  params.transformed_cutoff = 0;
  params.min_recurrence = 1;
  params.transformed_min_recurrence = 1;
  const auto inc = check_core_inclusion(matrix, pi, params);
  return {rows >= 1 && worst <= 0.05 && outside && !inc.holds,
          "rows 1.." + std::to_string(rows) + ": max |A_n pi - " + fmt(limit) + "| = " + fmt(worst) +
              (outside ? ", outside [0,1]" : ", inside [0,1]") + "; " + inc.verdict()};
}

// Witness stream with three targets.
Outcome ac7() {
  WitnessPlan plan;
  plan.targets = {point(2, 1, {{1, 1}, {0, 1}}), point(2, 1, {{0, 1}, {1, 1}}), point(2, 1, {{1, 2}, {1, 2}})};
  plan.partition = BlockPartition(9.0);
  const std::uint64_t horizon = 1000000;
  const auto w = build_witness(plan, horizon);
  const auto path = frequency_path(w.stream, 1, horizon);
  ClusterOptions options;
  options.cutoffs = {plan.partition.end(plan.cycle_length())};
  bool dense = true;
  std::string densities;
  for (std::size_t t = 0; t < plan.targets.size(); ++t) {
    const auto r = cluster_score(path, plan.targets[t].values(), 0.1, SubmeasureSpec::density(), options);
    dense = dense && r.score >= 0.1;
    densities += (t ? ", " : "") + fmt(r.score);
  }
  bool ends = true;
  std::string end_values;
  for (const auto& b : w.blocks) {
    if (b.target != 0 || b.end > horizon || b.q < 3) continue;
    const double pi0 = path[b.end - 1][0];
    ends = ends && std::abs(pi0 - 0.9) <= 0.02;
    end_values += (end_values.empty() ? "" : ", ") + fmt(pi0);
  }
  return {dense && ends, "eps = 0.1 upper densities " + densities + " (need >= 0.1); pi_0 at (1,0)-block ends " +
                             end_values + " (need 0.9 +- 0.02)"};
}

// Subsequence of the even positions.
Outcome ac8() {
  const std::uint64_t horizon = 10000;
  const auto stream = DigitStream::periodic(2, {0, 1});
  const auto matrix = subsequence_matrix(SubsequenceRule::digit_positions(stream, 1, horizon));
  const auto traj = frequency_path(stream, 1, horizon);
  const auto rows = rows_within(matrix, horizon);
  const auto ay = transform(matrix, traj, 1, rows);
  bool constant = rows > 0;
  for (std::size_t i = 0; i < ay.size(); ++i) constant = constant && ay[i][0] == 0.5 && ay[i][1] == 0.5;
  const auto candidates = enumerate_rationals(2, 1, 8);
  const auto gamma = estimate_gamma(ay, candidates, 0.05, SubmeasureSpec::density(), 0.05);
  return {constant && gamma.size() == 1,
          "rows 1.." + std::to_string(rows) + " constant (1/2,1/2): " + (constant ? "yes" : "no") + "; retained " +
              std::to_string(gamma.size()) + " of " + std::to_string(candidates.size()) + " candidates"};
}

// Submeasure suite.
Outcome ac9() {
  IndexSet evens;
  for (std::uint64_t n = 2; n <= 10000; n += 2) evens.push_back(n);
  const auto ev = tail_norm_estimate(SubmeasureSpec::density(), evens, {1, 10, 100, 1000});
  bool evens_ok = true;
  std::string ev_text;
  for (const auto& t : ev) {
    evens_ok = evens_ok && std::abs(t.value - 0.5) <= 0.01;
    ev_text += (ev_text.empty() ? "" : ", ") + fmt(t.value);
  }
  IndexSet squares;
  for (std::uint64_t i = 1; i * i <= 10000; ++i) squares.push_back(i * i);
  const auto sq = tail_norm_estimate(SubmeasureSpec::density(), squares, {1, 10, 100, 1000});
  bool trend = sq.back().value < 0.02;
  for (std::size_t i = 1; i < sq.size(); ++i) trend = trend && sq[i].value <= sq[i - 1].value;

  std::mt19937_64 rng(9009);
  std::vector<double> weights(400);
  for (auto& w : weights) w = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const std::vector<SubmeasureSpec> specs{SubmeasureSpec::counting(), SubmeasureSpec::density(),
                                          SubmeasureSpec::summable(), SubmeasureSpec::custom(weights)};
  std::size_t broken = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    auto draw = [&] {
      IndexSet s;
      const double p = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
      for (std::uint64_t n = 1; n <= 400; ++n) {
        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p) s.push_back(n);
      }
      return s;
    };
    const auto a = draw();
    const auto b = draw();
    IndexSet u;
    IndexSet i;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(i));
    for (const auto& spec : specs) {
      const double pa = phi_eval(spec, a);
      const double pb = phi_eval(spec, b);
      const double pu = phi_eval(spec, u);
      broken += pu > pa + pb + 1e-9 || phi_eval(spec, i) > pa + 1e-12 || pa > pu + 1e-12;
    }
  }
  return {evens_ok && trend && broken == 0,
          "evens tail density at m = 1, 10, 100, 1000: " + ev_text + " (need 0.5 +- 0.01); squares at m = 1000: " +
              fmt(sq.back().value) + (trend ? " nonincreasing" : " not monotone") + "; submeasure axiom failures " +
              std::to_string(broken) + " of 40000"};
}

// Frank-Wolfe against a dense-grid minimization.
Outcome ac10() {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    const std::size_t m = 1 + rng() % 6;
    std::vector<std::vector<double>> cand(m, std::vector<double>(d));
    for (auto& c : cand) {
      for (auto& v : c) v = coord(rng);
    }
    std::vector<double> p(d);
    for (auto& v : p) v = 1.5 * coord(rng);
    worst = std::max(worst, std::abs(dist_to_hull(p, cand) - oracle::hull_distance_grid(p, cand)));
  }
  return {worst <= 1e-4, "100 instances: max |FW - grid| = " + fmt(worst) + " (limit 1e-4)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10};
  std::size_t first = 1;
  std::size_t last = criteria.size();
  if (argc > 1) {
    first = last = std::strtoul(argv[1], nullptr, 10);
    if (first < 1 || first > criteria.size()) {
      std::cerr << "usage: acceptance [1-" << criteria.size() << "]\n";
      return 2;
    }
  }
  int failures = 0;
  for (std::size_t i = first; i <= last; ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "AC" << i << (o.pass ? " PASS: " : " FAIL: ") << o.detail << " [" << fmt(secs) << " s]"
              << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
