#pragma once

#include <cstddef>
#include <functional>

namespace cayley {

/// Worker count used by parallel loops. Defaults to $CAYLEYLAB_THREADS or 1.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Runs body(begin, end) over [0, n) split into contiguous chunks, one per
/// worker. Chunk boundaries depend only on n and the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

/// Runs task(i) for every i in [0, n), handing tasks to workers on demand.
/// Each task must write only to its own output slot.
void parallel_tasks(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace cayley
