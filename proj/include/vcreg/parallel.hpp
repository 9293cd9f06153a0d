#pragma once

#include <cstddef>
#include <functional>

namespace vcreg {

// Worker count: VCREG_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

// Calls body(i) for i in [0, n), split into contiguous chunks across threads.
// body must only write to state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace vcreg
