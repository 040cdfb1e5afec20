#include "normality/ideals.hpp"

#include "normality/errors.hpp"
#include "normality/parallel.hpp"

#include <algorithm>

namespace normality {

SubmeasureSpec SubmeasureSpec::counting() {
  return {Kind::counting, Mode::exhaustive_norm, {}};
}

SubmeasureSpec SubmeasureSpec::density() {
  return {Kind::density, Mode::exhaustive_norm, {}};
}

SubmeasureSpec SubmeasureSpec::summable() {
  // phi(N) is infinite here, so membership is phi(A) < infinity rather than a zero norm.
  return {Kind::weighted_sum, Mode::finite_phi, {}};
}

SubmeasureSpec SubmeasureSpec::custom(std::vector<double> weights, Mode mode) {
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("custom submeasure: weights must be nonnegative");
  }
  return {Kind::custom_weights, mode, std::move(weights)};
}

SubmeasureSpec SubmeasureSpec::named(const std::string& name) {
  if (name == "counting" || name == "fin") return counting();
  if (name == "density" || name == "z") return density();
  if (name == "summable" || name == "weighted-sum") return summable();
  throw DomainError("unsupported submeasure kind '" + name + "'");
}

std::string SubmeasureSpec::name() const {
  switch (kind) {
    case Kind::counting:
      return "counting";
    case Kind::density:
      return "density";
    case Kind::weighted_sum:
      return "summable";
    case Kind::custom_weights:
      return "custom-weights";
  }
  return "unknown";
}

std::string to_string(SubmeasureSpec::Mode mode) {
  return mode == SubmeasureSpec::Mode::exhaustive_norm ? "exhaustive-norm" : "finite-phi";
}

void validate_index_set(const IndexSet& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] == 0) throw DomainError("index sets hold positive integers");
    if (i > 0 && set[i] <= set[i - 1]) {
      throw DomainError("index sets must be sorted without duplicates");
    }
  }
}

namespace {

// phi(set cap (cutoff, inf)) without copying.
double phi_tail(const SubmeasureSpec& spec, const IndexSet& set, std::uint64_t cutoff) {
  const auto first = std::upper_bound(set.begin(), set.end(), cutoff);
  switch (spec.kind) {
    case SubmeasureSpec::Kind::counting:
      return static_cast<double>(set.end() - first);
    case SubmeasureSpec::Kind::density: {
      double best = 0.0;
      std::uint64_t count = 0;
      for (auto it = first; it != set.end(); ++it) {
        ++count;
        best = std::max(best, static_cast<double>(count) / static_cast<double>(*it));
      }
      return best;
    }
    case SubmeasureSpec::Kind::weighted_sum: {
      double sum = 0.0;
      for (auto it = set.end(); it != first;) sum += 1.0 / static_cast<double>(*--it);
      return sum;
    }
    case SubmeasureSpec::Kind::custom_weights: {
      double sum = 0.0;
      for (auto it = first; it != set.end(); ++it) {
        if (*it > spec.weights.size()) {
          throw DomainError("custom submeasure: no weight for index " + std::to_string(*it));
        }
        sum += spec.weights[*it - 1];
      }
      return sum;
    }
  }
  throw DomainError("unsupported submeasure kind");
}

}  // namespace

double phi_eval(const SubmeasureSpec& spec, const IndexSet& set) {
  validate_index_set(set);
  return phi_tail(spec, set, 0);
}

std::vector<TailEstimate> tail_norm_estimate(const SubmeasureSpec& spec, const IndexSet& set,
                                             const std::vector<std::uint64_t>& cutoffs) {
  validate_index_set(set);
  std::vector<TailEstimate> out;
  out.reserve(cutoffs.size());
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) {
      throw DomainError("tail cutoffs must be strictly increasing");
    }
    out.push_back({cutoffs[i], phi_tail(spec, set, cutoffs[i])});
  }
  return out;
}

IndexSet hit_set(const Trajectory& trajectory, std::span<const double> target, double eps) {
  if (target.size() != trajectory.dim()) throw DomainError("hit_set: dimension mismatch");
  if (!(eps >= 0.0)) throw DomainError("hit_set: eps must be nonnegative");
  IndexSet hits;
  const double eps2 = eps * eps;
  for (std::size_t pos = 0; pos < trajectory.size(); ++pos) {
    const auto x = trajectory[pos];
    double sum = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s) {
      const double d = x[s] - target[s];
      sum += d * d;
    }
    if (sum <= eps2) hits.push_back(trajectory.index(pos));
  }
  return hits;
}

std::string to_string(Evidence evidence) {
  switch (evidence) {
    case Evidence::none:
      return "none";
    case Evidence::cluster:
      return "cluster-evidence";
    case Evidence::limit_point:
      return "limit-point-evidence";
  }
  return "unknown";
}

std::vector<std::uint64_t> default_cutoffs(std::uint64_t horizon) {
  std::vector<std::uint64_t> cutoffs{0};
  for (std::uint64_t m = 1; m <= horizon / 100; m *= 10) cutoffs.push_back(m);
  return cutoffs;
}

ClusterReport cluster_score(const Trajectory& trajectory, std::span<const double> target, double eps,
                            const SubmeasureSpec& spec, const ClusterOptions& options) {
  if (options.limit_threshold < options.cluster_threshold) {
    throw DomainError("cluster_score: limit threshold must not be below the cluster threshold");
  }
  ClusterReport report;
  report.target.assign(target.begin(), target.end());
  report.eps = eps;
  report.ideal = spec.name();
  report.horizon = trajectory.max_index();
  const IndexSet hits = hit_set(trajectory, target, eps);
  report.hit_count = hits.size();

  for (std::uint64_t n = 1;; n *= 2) {
    const std::uint64_t at = std::min(n, report.horizon);
    const auto count = static_cast<std::uint64_t>(
        std::upper_bound(hits.begin(), hits.end(), at) - hits.begin());
    report.hit_profile.emplace_back(at, count);
    if (at == report.horizon) break;
  }

  const auto cutoffs = options.cutoffs.empty() ? default_cutoffs(report.horizon) : options.cutoffs;
  report.tail = tail_norm_estimate(spec, hits, cutoffs);
  report.score = report.tail.empty() ? phi_eval(spec, hits) : report.tail.back().value;
  if (report.score >= options.limit_threshold) {
    report.verdict = Evidence::limit_point;
  } else if (report.score >= options.cluster_threshold) {
    report.verdict = Evidence::cluster;
  }
  return report;
}

std::vector<GammaEntry> estimate_gamma(const Trajectory& trajectory,
                                       const std::vector<std::vector<double>>& candidates,
                                       double eps, const SubmeasureSpec& spec, double threshold,
                                       const ClusterOptions& options) {
  std::vector<ClusterReport> reports(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) {
    reports[i] = cluster_score(trajectory, candidates[i], eps, spec, options);
  });
  std::vector<GammaEntry> kept;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (reports[i].score >= threshold) {
      kept.push_back({i, candidates[i], reports[i].score, reports[i].verdict});
    }
  }
  return kept;
}

std::vector<GammaEntry> estimate_gamma(const Trajectory& trajectory,
                                       const std::vector<SimplexPoint>& candidates, double eps,
                                       const SubmeasureSpec& spec, double threshold,
                                       const ClusterOptions& options) {
  std::vector<std::vector<double>> points;
  points.reserve(candidates.size());
  for (const auto& c : candidates) points.push_back(c.values());
  return estimate_gamma(trajectory, points, eps, spec, threshold, options);
}

}  // namespace normality
