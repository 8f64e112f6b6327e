#pragma once

#include <cstddef>
#include <functional>

namespace latspec {

// Worker cap for parallel maps; 1 (the default) runs everything inline.
void set_thread_count(int threads);
int thread_count();

// Runs body(i) for i in [0, count). Each index is visited exactly once;
// callers write results into preallocated slots so output order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace latspec
