#pragma once

#include <cstddef>
#include <functional>

namespace scc {

// Worker count: SCC_THREADS if set and positive, else hardware concurrency.
size_t thread_count();

// Runs body(i) for i in [0, n) over thread_count() workers, dynamic chunks.
// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace scc
