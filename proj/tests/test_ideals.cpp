#include "support/oracles.hpp"

#include "normality/errors.hpp"
#include "normality/freq.hpp"
#include "normality/ideals.hpp"
#include "normality/synth.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace normality;
using Catch::Matchers::WithinAbs;

namespace {

SimplexPoint point(unsigned b, unsigned k, std::initializer_list<std::pair<int, int>> v) {
  std::vector<Rational> e;
  for (auto [p, q] : v) e.push_back(make_rational(p, q));
  return SimplexPoint::make(b, k, std::move(e));
}

IndexSet range_step(std::uint64_t first, std::uint64_t last, std::uint64_t step) {
  IndexSet out;
  for (std::uint64_t n = first; n <= last; n += step) out.push_back(n);
  return out;
}

IndexSet random_set(std::mt19937_64& rng, std::uint64_t universe, double p) {
  std::bernoulli_distribution keep(p);
  IndexSet out;
  for (std::uint64_t n = 1; n <= universe; ++n) {
    if (keep(rng)) out.push_back(n);
  }
  return out;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

TEST_CASE("phi_eval examples", "[ideals]") {
  CHECK(phi_eval(SubmeasureSpec::counting(), {3, 5, 9}) == 3.0);
  CHECK(phi_eval(SubmeasureSpec::density(), {2, 4, 6}) == 0.5);
  CHECK(phi_eval(SubmeasureSpec::summable(), {1, 2, 4}) == 1.75);
  CHECK(phi_eval(SubmeasureSpec::custom({1.0, 0.0, 2.5}), {1, 3}) == 3.5);
  for (const auto& spec : {SubmeasureSpec::counting(), SubmeasureSpec::density(), SubmeasureSpec::summable()}) {
    CHECK(phi_eval(spec, {}) == 0.0);
  }
  CHECK(SubmeasureSpec::summable().mode == SubmeasureSpec::Mode::finite_phi);
  CHECK(SubmeasureSpec::density().mode == SubmeasureSpec::Mode::exhaustive_norm);
  CHECK(SubmeasureSpec::named("density").kind == SubmeasureSpec::Kind::density);
  CHECK_THROWS_AS(SubmeasureSpec::named("ultrafilter"), DomainError);
  CHECK_THROWS_AS(phi_eval(SubmeasureSpec::counting(), {3, 2}), DomainError);
  CHECK_THROWS_AS(phi_eval(SubmeasureSpec::counting(), {0, 2}), DomainError);
  CHECK_THROWS_AS(phi_eval(SubmeasureSpec::custom({1.0}), {2}), DomainError);
}

TEST_CASE("density phi equals the full-scan sup", "[ideals]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto set = random_set(rng, 1 + rng() % 500, std::uniform_real_distribution<double>(0.0, 0.6)(rng));
    const std::uint64_t horizon = set.empty() ? 1 : set.back();
    REQUIRE(phi_eval(SubmeasureSpec::density(), set) == oracle::density_sup(set, horizon));
  }
}

TEST_CASE("tail estimates", "[ideals]") {
  // Over a finite prefix the sup sits at the horizon: (N - m) / (2N).
  const auto evens = range_step(2, 10000, 2);
  const auto ev = tail_norm_estimate(SubmeasureSpec::density(), evens, {10, 100, 1000});
  CHECK(ev[0].value == 0.4995);
  CHECK(ev[1].value == 0.495);
  CHECK(ev[2].value == 0.45);
  const auto tail = tail_norm_estimate(SubmeasureSpec::counting(), {3, 5, 9}, {0, 4, 9, 100});
  CHECK(tail[0].value == 3.0);
  CHECK(tail[1].value == 2.0);
  CHECK(tail[2].value == 0.0);
  CHECK(tail[3].value == 0.0);

  IndexSet squares;
  for (std::uint64_t i = 1; i * i <= 10000; ++i) squares.push_back(i * i);
  const auto sq = tail_norm_estimate(SubmeasureSpec::density(), squares, {10, 100, 1000});
  // sup over n of #(squares in (1000, n]) / n peaks at n = 62^2.
  CHECK_THAT(sq[2].value, WithinAbs(31.0 / 3844.0, 1e-15));
  CHECK(sq[0].value >= sq[1].value);
  CHECK(sq[1].value >= sq[2].value);
  CHECK(sq[2].value < 0.02);
  CHECK_THROWS_AS(tail_norm_estimate(SubmeasureSpec::density(), evens, {100, 10}), DomainError);
}

TEST_CASE("submeasures are monotone and subadditive on random sets", "[ideals]") {
  std::mt19937_64 rng(42);
  std::vector<double> weights(300);
  for (auto& w : weights) w = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
  const std::vector<SubmeasureSpec> specs{SubmeasureSpec::counting(), SubmeasureSpec::density(),
                                          SubmeasureSpec::summable(), SubmeasureSpec::custom(weights)};
  for (int trial = 0; trial < 2500; ++trial) {
    const auto a = random_set(rng, 1 + rng() % 300, 0.3);
    const auto b = random_set(rng, 1 + rng() % 300, 0.3);
    const auto u = set_union(a, b);
    const auto i = set_intersection(a, b);
    for (const auto& spec : specs) {
      const double pa = phi_eval(spec, a);
      const double pb = phi_eval(spec, b);
      const double pu = phi_eval(spec, u);
      REQUIRE(pu <= pa + pb + 1e-9);
      REQUIRE(phi_eval(spec, i) <= pa + 1e-12);
      REQUIRE(pa <= pu + 1e-12);
    }
  }
}

TEST_CASE("hit_set examples", "[ideals]") {
  const auto path = frequency_path(DigitStream::periodic(2, {0, 1}), 1, 1000);
  const std::vector<double> half{0.5, 0.5};
  CHECK(hit_set(path, half, 0.01) == set_union(range_step(2, 1000, 2), range_step(71, 1000, 2)));
  CHECK(hit_set(path, half, 1e-12) == range_step(2, 1000, 2));

  const auto ones = frequency_path(DigitStream::periodic(2, {1}), 1, 500);
  const std::vector<double> zero{1.0, 0.0};
  CHECK(hit_set(ones, zero, 0.1).empty());
  const std::vector<double> wrong{1.0};
  CHECK_THROWS_AS(hit_set(ones, wrong, 0.1), DomainError);
}

TEST_CASE("hit sets of a witness stream are late segments of 0-blocks", "[ideals]") {
  WitnessPlan plan;
  plan.targets = {point(2, 1, {{1, 1}, {0, 1}}), point(2, 1, {{0, 1}, {1, 1}})};
  plan.partition = BlockPartition(9.0);
  const std::uint64_t horizon = 100000;
  const auto w = build_witness(plan, horizon);
  const auto hits = hit_set(frequency_path(w.stream, 1, horizon), plan.targets[0].values(), 0.15);
  REQUIRE_FALSE(hits.empty());
  for (auto n : hits) {
    if (n <= plan.partition.end(1)) continue;  // the first block is all zeros
    bool inside = false;
    for (const auto& b : w.blocks) {
      // pi_0 needs a few steps of the next block to fall back below the threshold.
      const std::uint64_t spill = 1 + (b.end - b.start) / 50;
      if (b.target == 0 && n >= b.start + (b.end - b.start) / 2 && n <= b.end + spill) inside = true;
    }
    INFO("n = " << n);
    REQUIRE(inside);
  }
}

TEST_CASE("cluster_score examples", "[ideals]") {
  const auto path = frequency_path(DigitStream::periodic(2, {0, 1}), 1, 100000);
  const std::vector<double> half{0.5, 0.5};
  const auto report = cluster_score(path, half, 0.05, SubmeasureSpec::density());
  CHECK(report.score >= 0.99);
  CHECK(report.verdict == Evidence::limit_point);
  CHECK(report.hit_profile.back().first == 100000);

  const auto zeros = frequency_path(DigitStream::periodic(2, {0}, Realization::symbols), 1, 10000);
  const std::vector<double> one{0.0, 1.0};
  for (const auto& spec : {SubmeasureSpec::counting(), SubmeasureSpec::density(), SubmeasureSpec::summable()}) {
    const auto r = cluster_score(zeros, one, 0.7, spec);
    CHECK(r.score == 0.0);
    CHECK(r.verdict == Evidence::none);
  }
}

TEST_CASE("witness targets both carry density evidence", "[ideals]") {
  WitnessPlan plan;
  plan.targets = {point(2, 1, {{1, 1}, {0, 1}}), point(2, 1, {{0, 1}, {1, 1}})};
  plan.partition = BlockPartition(9.0);
  const std::uint64_t horizon = 1000000;
  const auto path = frequency_path(build_witness(plan, horizon).stream, 1, horizon);
  // At eps = 0.1 the block-end frequencies 0.9 sit exactly on the boundary
  // |pi - eta| = 0.1 * sqrt(2) > 0.1, so the hit sets are empty; 0.15 clears it.
  ClusterOptions options;
  options.cutoffs = {plan.partition.end(plan.cycle_length())};
  const auto kept = estimate_gamma(path, plan.targets, 0.15, SubmeasureSpec::density(), 0.05, options);
  CHECK(kept.size() == 2);
  for (const auto& g : kept) CHECK(g.verdict == Evidence::cluster);
}

TEST_CASE("estimate_gamma examples", "[ideals]") {
  const auto target = point(2, 2, {{1, 2}, {1, 6}, {1, 6}, {1, 6}});
  const auto path = frequency_path(DigitStream::periodic(2, {0, 0, 0, 0, 1, 1}), 2, 20000);
  const auto candidates = enumerate_rationals(2, 2, 6);
  const auto kept = estimate_gamma(path, candidates, 0.05, SubmeasureSpec::counting(), 1.0);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].point == target.values());
  CHECK(kept[0].verdict == Evidence::limit_point);

  Trajectory constant(4);
  const std::vector<double> vertex{1, 0, 0, 0};
  for (std::uint64_t n = 1; n <= 1000; ++n) constant.push_back(n, vertex);
  const auto v = estimate_gamma(constant, enumerate_rationals(2, 2, 4), 0.05, SubmeasureSpec::density(), 0.5);
  REQUIRE(v.size() == 1);
  CHECK(v[0].point == vertex);
}

TEST_CASE("synthesized limits are the only Fin cluster points on a separated grid", "[ideals]") {
  for (const auto& target : {point(2, 2, {{1, 4}, {1, 4}, {1, 4}, {1, 4}}), point(2, 2, {{1, 3}, {1, 6}, {1, 6}, {1, 3}}),
                             point(2, 2, {{0, 1}, {1, 2}, {1, 2}, {0, 1}})}) {
    const auto path = frequency_path(synthesize(target), 2, 20000);
    const auto kept = estimate_gamma(path, enumerate_rationals(2, 2, 6), 0.02, SubmeasureSpec::counting(), 1.0);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].point == target.values());
  }
}

TEST_CASE("scores grow with eps, shrink with cutoff, and limit evidence implies cluster evidence",
          "[ideals]") {
  std::mt19937_64 rng(43);
  const auto stream = DigitStream::random(2, 7, {0.3, 0.7});
  const auto path = frequency_path(stream, 1, 20000);
  for (int trial = 0; trial < 40; ++trial) {
    const double a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const std::vector<double> target{a, 1.0 - a};
    ClusterOptions options;
    options.cutoffs = {0, 10, 100, 1000};
    double previous = -1.0;
    for (double eps : {0.005, 0.01, 0.05, 0.1, 0.3}) {
      for (const auto& spec : {SubmeasureSpec::counting(), SubmeasureSpec::density()}) {
        const auto r = cluster_score(path, target, eps, spec, options);
        for (std::size_t i = 1; i < r.tail.size(); ++i) REQUIRE(r.tail[i].value <= r.tail[i - 1].value);
        if (r.verdict == Evidence::limit_point) REQUIRE(r.score >= options.cluster_threshold);
      }
      const double s = cluster_score(path, target, eps, SubmeasureSpec::density(), options).score;
      REQUIRE(s >= previous);
      previous = s;
    }
  }
}
