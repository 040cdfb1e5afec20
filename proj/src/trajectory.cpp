#include "normality/trajectory.hpp"

#include "normality/errors.hpp"

#include <algorithm>
#include <cmath>

namespace normality {

Trajectory Trajectory::dense(std::size_t dim, std::vector<double> values) {
  if (dim == 0 || values.size() % dim != 0) {
    throw DomainError("dense trajectory: value count is not a multiple of the dimension");
  }
  Trajectory t(dim);
  const std::size_t n = values.size() / dim;
  t.indices_.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.indices_[i] = i + 1;
  t.values_ = std::move(values);
  return t;
}

Trajectory Trajectory::scalar(const std::vector<double>& values) { return dense(1, values); }

void Trajectory::push_back(std::uint64_t index, std::span<const double> x) {
  if (x.size() != dim_) throw DomainError("trajectory: dimension mismatch");
  if (index == 0 || (!indices_.empty() && index <= indices_.back())) {
    throw DomainError("trajectory: indices must be positive and strictly increasing");
  }
  indices_.push_back(index);
  values_.insert(values_.end(), x.begin(), x.end());
}

std::optional<std::span<const double>> Trajectory::at_index(std::uint64_t n) const {
  if (n == 0 || n > max_index()) return std::nullopt;
  if (is_dense()) return (*this)[n - 1];
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), n);
  if (it == indices_.end() || *it != n) return std::nullopt;
  return (*this)[static_cast<std::size_t>(it - indices_.begin())];
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("distance: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace normality
