#include "normality/hull.hpp"

#include "normality/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace normality {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

HullProjection project_to_hull(std::span<const double> point,
                               const std::vector<std::vector<double>>& candidates,
                               const HullOptions& options) {
  if (candidates.empty()) throw DomainError("dist_to_hull: empty candidate list");
  const std::size_t dim = point.size();
  for (const auto& c : candidates) {
    if (c.size() != dim) throw DomainError("dist_to_hull: dimension mismatch");
  }
  const std::size_t m = candidates.size();

  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    double d2 = 0.0;
    for (std::size_t s = 0; s < dim; ++s) d2 += (candidates[j][s] - point[s]) * (candidates[j][s] - point[s]);
    if (d2 < best) {
      best = d2;
      nearest = j;
    }
  }

  HullProjection out;
  out.weights.assign(m, 0.0);
  out.weights[nearest] = 1.0;
  std::vector<double> x = candidates[nearest];
  std::vector<double> grad(dim);
  std::vector<double> dir(dim);
  std::vector<double> scores(m);

  for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations) {
    for (std::size_t s = 0; s < dim; ++s) grad[s] = x[s] - point[s];
    const double gx = dot(grad, x);
    std::size_t toward = 0;
    std::size_t away = m;
    for (std::size_t j = 0; j < m; ++j) {
      scores[j] = dot(grad, candidates[j]);
      if (scores[j] < scores[toward]) toward = j;
      if (out.weights[j] > 0.0 && (away == m || scores[j] > scores[away])) away = j;
    }
    const double fw_gap = gx - scores[toward];
    const double away_gap = scores[away] - gx;
    out.gap = fw_gap;
    if (fw_gap <= options.gap_tolerance) {
      out.converged = true;
      break;
    }

    const bool forward = fw_gap >= away_gap;
    double step_max = 1.0;
    if (forward) {
      for (std::size_t s = 0; s < dim; ++s) dir[s] = candidates[toward][s] - x[s];
    } else {
      const double lambda = out.weights[away];
      step_max = lambda / (1.0 - lambda);
      for (std::size_t s = 0; s < dim; ++s) dir[s] = x[s] - candidates[away][s];
    }
    const double dir2 = dot(dir, dir);
    if (dir2 <= 0.0) {
      out.converged = true;
      break;
    }
    const double step = std::clamp(-dot(grad, dir) / dir2, 0.0, step_max);

    if (forward) {
      for (auto& w : out.weights) w *= (1.0 - step);
      out.weights[toward] += step;
    } else {
      for (auto& w : out.weights) w *= (1.0 + step);
      out.weights[away] -= step;
      if (step == step_max) out.weights[away] = 0.0;
    }
    for (std::size_t s = 0; s < dim; ++s) x[s] += step * dir[s];
  }

  // Rebuild x from the weights to shed accumulated drift.
  double total = 0.0;
  for (auto& w : out.weights) {
    w = std::max(w, 0.0);
    total += w;
  }
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    out.weights[j] /= total;
    for (std::size_t s = 0; s < dim; ++s) x[s] += out.weights[j] * candidates[j][s];
  }
  double d2 = 0.0;
  for (std::size_t s = 0; s < dim; ++s) d2 += (x[s] - point[s]) * (x[s] - point[s]);
  out.distance = std::sqrt(d2);
  out.nearest = std::move(x);
  return out;
}

double dist_to_hull(std::span<const double> point, const std::vector<std::vector<double>>& candidates,
                    const HullOptions& options) {
  return project_to_hull(point, candidates, options).distance;
}

}  // namespace normality
