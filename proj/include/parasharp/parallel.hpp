#pragma once

#include <cstddef>
#include <functional>

namespace parasharp {

/// Number of worker threads: hardware concurrency, capped by the
/// PARASHARP_THREADS environment variable when it holds a positive integer.
unsigned worker_count();

/// Calls body(i) for i in [0, n). Items are split into contiguous chunks, one
/// per worker. Each item must write only its own outputs, so results do not
/// depend on the thread count. The first exception thrown by any item is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace parasharp
