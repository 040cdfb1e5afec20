#pragma once

#include "normality/simplex.hpp"
#include "normality/trajectory.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace normality {

/// Lower semicontinuous submeasure phi on subsets of {1, 2, ...}.
///   counting       phi(A) = #A                         (Fin)
///   density        phi(A) = sup_n #(A cap [1,n]) / n   (density-zero ideal)
///   weighted_sum   phi(A) = sum_{n in A} 1/n           (summable ideal)
///   custom_weights phi(A) = sum_{n in A} w_n
/// In exhaustive-norm mode A belongs to the ideal iff ||A|| = lim_m
/// phi(A \ [1,m]) = 0; in finite-phi mode iff phi(A) < infinity.
struct SubmeasureSpec {
  enum class Kind { counting, density, weighted_sum, custom_weights };
  enum class Mode { exhaustive_norm, finite_phi };

  Kind kind = Kind::density;
  Mode mode = Mode::exhaustive_norm;
  std::vector<double> weights;  // custom_weights: w_1, w_2, ...

  static SubmeasureSpec counting();
  static SubmeasureSpec density();
  static SubmeasureSpec summable();
  static SubmeasureSpec custom(std::vector<double> weights, Mode mode = Mode::finite_phi);
  /// "counting", "density", "summable", ...
  static SubmeasureSpec named(const std::string& name);

  std::string name() const;
};

std::string to_string(SubmeasureSpec::Mode mode);

/// Sorted, duplicate-free, elements >= 1.
using IndexSet = std::vector<std::uint64_t>;

void validate_index_set(const IndexSet& set);

double phi_eval(const SubmeasureSpec& spec, const IndexSet& set);

struct TailEstimate {
  std::uint64_t cutoff = 0;
  double value = 0.0;  // phi(set \ [1, cutoff])
};

/// Finite-horizon evidence for ||set||: phi(set \ [1,m]) per cutoff m. The
/// density sup is evaluated exactly over the prefix (it is attained at an
/// element of the set), so each value is a lower bound on the infinite-set
/// value. Cutoffs must be strictly increasing.
std::vector<TailEstimate> tail_norm_estimate(const SubmeasureSpec& spec, const IndexSet& set,
                                             const std::vector<std::uint64_t>& cutoffs);

/// Indices n of the trajectory with |x_n - target| <= eps.
IndexSet hit_set(const Trajectory& trajectory, std::span<const double> target, double eps);

enum class Evidence { none, cluster, limit_point };
std::string to_string(Evidence evidence);

struct ClusterOptions {
  std::vector<std::uint64_t> cutoffs;  // empty: default_cutoffs(horizon)
  double cluster_threshold = 0.05;
  double limit_threshold = 0.5;
};

/// {0} followed by 1, 10, 100, ... up to horizon / 100.
std::vector<std::uint64_t> default_cutoffs(std::uint64_t horizon);

struct ClusterReport {
  std::vector<double> target;
  double eps = 0.0;
  std::string ideal;
  std::uint64_t horizon = 0;
  std::uint64_t hit_count = 0;
  /// (n, #(hits cap [1,n])) on a doubling grid ending at the horizon.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> hit_profile;
  std::vector<TailEstimate> tail;
  double score = 0.0;  // tail estimate at the largest cutoff
  Evidence verdict = Evidence::none;
};

ClusterReport cluster_score(const Trajectory& trajectory, std::span<const double> target, double eps,
                            const SubmeasureSpec& spec, const ClusterOptions& options = {});

struct GammaEntry {
  std::size_t candidate = 0;  // position in the candidate list
  std::vector<double> point;
  double score = 0.0;
  Evidence verdict = Evidence::none;
};

/// Candidates whose cluster score reaches `threshold`, in candidate order.
std::vector<GammaEntry> estimate_gamma(const Trajectory& trajectory,
                                       const std::vector<std::vector<double>>& candidates,
                                       double eps, const SubmeasureSpec& spec, double threshold,
                                       const ClusterOptions& options = {});
std::vector<GammaEntry> estimate_gamma(const Trajectory& trajectory,
                                       const std::vector<SimplexPoint>& candidates, double eps,
                                       const SubmeasureSpec& spec, double threshold,
                                       const ClusterOptions& options = {});

}  // namespace normality
