#pragma once

#include <cstddef>
#include <functional>

namespace nhsense {

/// Thread cap from NH_SENSE_THREADS (0 or unset = hardware concurrency).
unsigned thread_cap();

/// Runs fn(i) for i in [0, n) across up to thread_cap() workers. Each index
/// must write only its own output slot; with that discipline results are
/// deterministic under any scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nhsense
