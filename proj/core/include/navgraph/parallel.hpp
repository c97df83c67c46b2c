#pragma once

#include <cstddef>
#include <functional>

namespace navgraph {

/// Resolves a thread-count request: 0 means "all available cores".
unsigned resolve_threads(unsigned requested);

/// Runs fn(i) for every i in [begin, end), chunked across `threads` workers.
/// Every index is processed exactly once, so callers may write to per-index
/// slots without synchronization. Exceptions thrown by fn are rethrown on the
/// calling thread after all workers join.
void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace navgraph
