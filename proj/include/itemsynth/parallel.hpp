#pragma once

#include <cstddef>
#include <functional>

namespace itemsynth {

// Worker count: requested if > 0, else ITEMSET_SYNTH_THREADS, else hardware.
int resolve_thread_count(int requested) noexcept;

// Static partition of [0, n) over `threads` workers. Bodies must only write
// to disjoint slots; results are then independent of the worker count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace itemsynth
