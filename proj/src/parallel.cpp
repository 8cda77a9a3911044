#include "skw/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skw::parallel {

namespace {
std::atomic<bool> g_enabled{true};
}

int max_threads() {
  if (const char* env = std::getenv("SCHMIDT_WITNESS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
      // ignore malformed values, fall through to the default
    }
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_enabled(bool enabled) { g_enabled.store(enabled); }
bool enabled() { return g_enabled.load(); }

void parallel_for(int n, const std::function<void(int)>& body) {
#ifdef _OPENMP
  const int threads = max_threads();
  if (enabled() && threads > 1 && n > 1 && !omp_in_parallel()) {
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#endif
  for (int i = 0; i < n; ++i) body(i);
}

}  // namespace skw::parallel
