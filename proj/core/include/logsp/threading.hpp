#pragma once

#include <cstddef>
#include <functional>

namespace logsp {

// Worker threads used by row-parallel loops. Reductions are always combined
// in a fixed order, so results do not depend on the partitioning.
void set_thread_count(int threads);
int thread_count();

// Runs body(begin..end) split into contiguous chunks across the configured
// worker threads. Serial when thread_count() <= 1.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace logsp
