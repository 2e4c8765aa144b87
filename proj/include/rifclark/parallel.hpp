#pragma once

#include <cstddef>
#include <functional>

namespace rifclark {

/// Worker count: hardware concurrency, capped by RIFCLARK_THREADS when set.
unsigned worker_count();

/// Calls body(i) for i in [0, n), split into contiguous blocks over
/// worker_count() threads. body must be safe to run concurrently for
/// distinct i. The first exception thrown by any block is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rifclark
