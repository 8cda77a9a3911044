// Compares the OpenMP kernels against the serial reference path on the two
// hot workloads: multistart k-norm solves and lambda-grid sweeps. Both paths
// must produce identical numbers (restart streams are indexed, not
// thread-bound); the benchmark asserts that while timing them.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "skw/knorm.hpp"
#include "skw/parallel.hpp"
#include "skw/random.hpp"
#include "skw/repro.hpp"

using namespace skw;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(bool threaded, const std::function<double()>& work, double& result) {
  parallel::set_enabled(threaded);
  const auto start = Clock::now();
  result = work();
  const auto stop = Clock::now();
  parallel::set_enabled(true);
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

int compare(const char* name, const std::function<double()>& work) {
  double serial_value = 0.0, threaded_value = 0.0;
  const double serial_ms = run_ms(false, work, serial_value);
  const double threaded_ms = run_ms(true, work, threaded_value);
  const bool match = serial_value == threaded_value;
  std::printf("%-28s serial %9.1f ms   openmp %9.1f ms   speedup %.2fx   %s\n", name,
              serial_ms, threaded_ms, serial_ms / threaded_ms,
              match ? "outputs identical" : "OUTPUT MISMATCH");
  return match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  std::printf("threads available: %d%s\n", parallel::max_threads(), quick ? " (quick)" : "");

  RandomStream rng(1234);
  const BipartiteDim dim(4, 4);
  const State rho(dim, random_density_matrix(dim, rng));

  SolverConfig cfg;
  cfg.restarts = quick ? 8 : 64;

  int failures = 0;
  failures += compare("multistart knorm 4x4 k=2", [&] { return knorm(rho, 2, cfg).value; });
  failures += compare("min_knorm profile 4x4", [&] {
    double sum = 0.0;
    for (const auto& r : min_knorm_profile(rho, cfg)) sum += r.value;
    return sum;
  });
  failures += compare("family-1 sweep k=1", [&] {
    double sum = 0.0;
    for (const auto& p : sweep_family(1, 1, uniform_grid(quick ? 5 : 21), cfg))
      sum += p.value_optimizer;
    return sum;
  });
  failures += compare("brute force sampler", [&] {
    return brute_force_knorm(rho, 1, quick ? 20000 : 200000, 7);
  });
  return failures;
}
