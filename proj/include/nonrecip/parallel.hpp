// parallel.hpp — deterministic parallel map over an index range
#pragma once

#include <functional>

namespace nonrecip {

// worker count: NONRECIP_THREADS if set (clamped to >= 1), else hardware
int worker_count();

// Runs body(i) for i in [0, n) on worker_count() threads, contiguous blocks.
// Callers write results into preallocated slots, so the output is identical
// to the serial order regardless of scheduling. First exception is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

} // namespace nonrecip
