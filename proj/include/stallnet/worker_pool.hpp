#pragma once

#include <cstddef>
#include <functional>

namespace stallnet {

// Worker count from the STALLNET_WORKERS environment variable, falling back to
// hardware concurrency. Always at least 1.
unsigned worker_count();

// Run body(0..n-1) on a pool of `workers` threads (0: worker_count()). The first
// exception thrown by any task is rethrown after all threads join. Results must be
// written to pre-sized, per-index slots so the outcome is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

}  // namespace stallnet
