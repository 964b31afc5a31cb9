#pragma once

#include <cstddef>
#include <functional>

namespace ycalc {

/// Worker cap: YOUNG_CALC_THREADS if set and positive, otherwise the
/// hardware concurrency.
std::size_t thread_budget();

/// Run body(i) for i in [0, count). Work is split into contiguous blocks;
/// nested calls run serially on the calling thread. The first exception
/// thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ycalc
