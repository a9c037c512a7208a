#pragma once

#include <cstddef>
#include <functional>

namespace zq {

// Worker count: ZQ_THREADS if set, else hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

// Calls body(begin, end) on disjoint chunks of [0, n). Chunking depends only
// on n and the worker count, and each index is written by one worker, so
// results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace zq
