#pragma once

#include <functional>

namespace dislospec {

/// Resolves a worker count: `requested` if positive, otherwise hardware
/// concurrency, in both cases capped by the DISLOSPEC_THREADS environment
/// variable when it is set to a positive value.
int worker_count(int requested = 0);

/// Runs fn(0..n-1) on up to `threads` workers. Serial when threads <= 1.
/// The first exception thrown by any worker is rethrown after all join.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace dislospec
