#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace normality {

/// A sequence of d-dimensional real vectors observed at strictly increasing
/// 1-based indices. Dense trajectories carry every index 1..N; sampled ones
/// (frequency vectors at a list of horizons, say) carry a subset.
class Trajectory {
 public:
  explicit Trajectory(std::size_t dim = 1) : dim_(dim) {}

  /// Indices 1..values.size()/dim.
  static Trajectory dense(std::size_t dim, std::vector<double> values);
  static Trajectory scalar(const std::vector<double>& values);

  /// Appends x at `index`; indices must be strictly increasing.
  void push_back(std::uint64_t index, std::span<const double> x);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::uint64_t index(std::size_t pos) const { return indices_[pos]; }
  std::span<const double> operator[](std::size_t pos) const {
    return {values_.data() + pos * dim_, dim_};
  }
  std::uint64_t max_index() const { return indices_.empty() ? 0 : indices_.back(); }
  bool is_dense() const { return indices_.empty() || indices_.back() == indices_.size(); }

  /// Value at sequence index n (not storage position), if observed.
  std::optional<std::span<const double>> at_index(std::uint64_t n) const;

  const std::vector<std::uint64_t>& indices() const { return indices_; }
  const std::vector<double>& flat() const { return values_; }

 private:
  std::size_t dim_;
  std::vector<std::uint64_t> indices_;
  std::vector<double> values_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace normality
