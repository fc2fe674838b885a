#pragma once

#include <cstddef>
#include <functional>

namespace gausstail {

/// Worker count: GAUSSTAIL_THREADS when set to an integer >= 1, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Calls body(i) for i in [0, count) on up to thread_count() threads.
/// Indices are split into contiguous static ranges; exceptions from workers
/// are rethrown on the calling thread (the first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gausstail
