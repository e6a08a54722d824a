#pragma once

#include <cstddef>
#include <functional>

namespace mqc::detail {

/// Worker count: MQC_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Calls body(begin, end) on disjoint chunks covering [0, n). Each index is
/// visited exactly once, so results written per index are deterministic.
/// The first exception thrown by a chunk is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace mqc::detail
