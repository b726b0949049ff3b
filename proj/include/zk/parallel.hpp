#ifndef ZK_PARALLEL_HPP
#define ZK_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace zk {

// Worker count: min(hardware, ZK_THREADS if set).  At least 1.
int thread_budget();

// Run body(i) for i in [0, n) over the thread budget.  Results must be written
// to preallocated slots indexed by i so the outcome is order-independent.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

} // namespace zk

#endif
