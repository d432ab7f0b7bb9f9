#pragma once

#include <cstddef>
#include <functional>

namespace pfdkit {

/// Worker count: PFDKIT_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Results must be
/// written to per-index slots; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pfdkit
