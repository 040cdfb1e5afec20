#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace normality {

struct HullOptions {
  double gap_tolerance = 1e-9;  // Frank-Wolfe duality gap on 0.5 |x - p|^2
  std::size_t max_iterations = 100000;
};

struct HullProjection {
  double distance = 0.0;
  std::vector<double> nearest;  // closest point of the hull
  std::vector<double> weights;  // convex weights over the candidates
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Closest point of conv(candidates) to `point` by Frank-Wolfe with away
/// steps over the convex weights, started at the nearest candidate.
HullProjection project_to_hull(std::span<const double> point,
                               const std::vector<std::vector<double>>& candidates,
                               const HullOptions& options = {});

double dist_to_hull(std::span<const double> point, const std::vector<std::vector<double>>& candidates,
                    const HullOptions& options = {});

}  // namespace normality
