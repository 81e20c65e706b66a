#pragma once

#include <cstddef>
#include <functional>

namespace chaoscope {

/// Worker count: CHAOSCOPE_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Calls body(i) for i in [0, n) across thread_count() workers with static
/// chunking. Each index is visited exactly once; callers write results to
/// per-index slots and reduce afterwards in index order, so output does not
/// depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace chaoscope
