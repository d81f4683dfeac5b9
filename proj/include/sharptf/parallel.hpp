#pragma once

#include <cstddef>
#include <functional>

namespace sharptf {

/// Worker count from SHARPTF_THREADS, else the hardware concurrency (>= 1).
std::size_t default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Indices are
/// handed out dynamically; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception thrown by any
/// body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads);

}  // namespace sharptf
