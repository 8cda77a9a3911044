#pragma once

#include <functional>

namespace skw::parallel {

// Thread cap: SCHMIDT_WITNESS_THREADS if set (>= 1), else the OpenMP default.
int max_threads();

// Globally toggle OpenMP execution. The serial path is the reference
// implementation; both paths produce identical results because all random
// streams are indexed by iteration, never by thread.
void set_enabled(bool enabled);
bool enabled();

// Runs body(0..n-1). Uses OpenMP when enabled and worthwhile, otherwise a
// plain loop. Exceptions thrown by body are captured and rethrown once.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace skw::parallel
