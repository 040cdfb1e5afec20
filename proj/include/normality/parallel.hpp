#pragma once

#include <cstddef>
#include <functional>

namespace normality {

/// Worker cap: NORMALITY_LAB_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// handled exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = worker_count());

}  // namespace normality
