#pragma once

#include <cstddef>
#include <functional>

namespace qjl {

/// Number of worker threads for a hint: hint >= 1 is taken as is, anything
/// else resolves to the hardware concurrency.
int resolve_workers(int hint);

/// Runs body(trial) for trial = 0..trials-1 across a worker pool. Bodies must
/// write only to their own trial's slot; results are then independent of the
/// worker count.
void parallel_trials(std::size_t trials, int workers, const std::function<void(std::size_t)>& body);

}  // namespace qjl
