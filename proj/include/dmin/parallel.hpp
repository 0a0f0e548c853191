#pragma once

#include <functional>

namespace dmin {

/// Worker count: KOEBE_MINIMAL_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. The first
/// exception thrown by any body is rethrown after all workers finish.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace dmin
