#pragma once

#include <cstddef>
#include <functional>

namespace fracgreen {

/// Worker count: FRACGREEN_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited exactly once, so bodies writing only to slot i give results
/// independent of the partitioning. The first exception thrown by any body
/// is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracgreen
