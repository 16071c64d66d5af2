#pragma once

#include <cstddef>
#include <functional>

namespace hypersect {

/// Worker count: hardware concurrency capped by HYPERSECT_THREADS when set.
unsigned max_threads();

/// Runs body(i) for i in [0, count) on up to max_threads() threads, in
/// contiguous blocks. Callers write results by index and reduce serially so
/// the outcome never depends on the thread count. Exceptions are rethrown on
/// the calling thread (first by index).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, bool allow_threads = true);

}  // namespace hypersect
