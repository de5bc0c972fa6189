#pragma once

#include <cstddef>
#include <functional>

namespace orbitreach {

/// Worker count from ORBITREACH_THREADS, else the hardware concurrency.
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. Each index
/// is processed exactly once; callers write results into per-index slots so
/// the outcome does not depend on scheduling. The first exception thrown by
/// any call is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace orbitreach
