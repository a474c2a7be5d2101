#pragma once

#include <cstddef>
#include <functional>

namespace cheblab {

/// Worker count: hardware concurrency, capped by CHEBLAB_THREADS when set.
unsigned worker_count();

/// Calls body(i) for i in [0, count), split into contiguous chunks across
/// worker_count() threads. The first exception thrown by any chunk is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cheblab
