#pragma once

#include <cstddef>
#include <functional>

namespace nhc {

/// Worker count: `requested` if positive, else the NHC_WORKERS environment
/// variable, else the hardware concurrency.
unsigned resolve_workers(int requested);

/// Calls body(i) for i in [0, n) on up to `workers` threads. Each index is
/// processed exactly once; results must be written to per-index slots.
/// The first exception thrown by a body is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace nhc
