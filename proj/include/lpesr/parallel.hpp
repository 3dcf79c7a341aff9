#pragma once

#include <cstddef>
#include <functional>

namespace lpesr {

/// Worker count: hardware concurrency, capped by the LPE_THREADS environment variable.
int thread_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n) on up to `threads` workers
/// (thread_count() when zero). Chunk boundaries depend only on n and the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn, int threads = 0);

}  // namespace lpesr
