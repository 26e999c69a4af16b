#pragma once

#include <cstddef>
#include <functional>

namespace reebstrip {

/// Worker count: REEBSTRIP_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();
/// Overrides the worker count for this process (0 restores the default).
void set_worker_count(unsigned n);

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited once; callers write results to per-index slots so output does
/// not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace reebstrip
