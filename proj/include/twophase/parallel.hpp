#pragma once

#include <functional>

namespace twophase {

/// Global cap on worker threads for sweeps and finite-difference Jacobians.
void set_max_threads(int n);
int max_threads();

/// Run body(0..count-1); results must go to disjoint slots, so the output is
/// identical regardless of scheduling.
void parallel_for(int count, const std::function<void(int)>& body);

} // namespace twophase
