#pragma once

#include <functional>

namespace aperture {

/// Worker cap: APERTURE_COMPLETE_THREADS when set (clamped to >= 1),
/// otherwise the hardware concurrency.
int max_threads();

/// Runs fn(i) for every i in [0, n). Indices are split into contiguous
/// chunks, one per worker; each index runs exactly once, so writes into
/// per-index slots need no synchronization and results do not depend on
/// the schedule.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace aperture
