#pragma once

#include <functional>

namespace wirtflow {

/// Worker pool size: WIRTFLOW_THREADS when set, else the logical core
/// count (at least 1).
int worker_count();

/// Runs body(0..count-1) across the worker pool. Each index must be
/// self-contained; callers aggregate in index order so results do not
/// depend on scheduling.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace wirtflow
