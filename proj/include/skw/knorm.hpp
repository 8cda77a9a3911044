#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skw/linalg.hpp"

namespace skw {

enum class Method { exact_spectral, closed_form, seesaw, brute_force };

std::string method_name(Method m);

struct SolverConfig {
  int restarts = 64;       // randomized multistart count
  int max_iters = 500;     // seesaw iterations per start
  double rel_tol = 1e-12;  // relative objective change to declare convergence
  std::uint64_t seed = 0;  // base seed; restart r uses stream (seed, r)

  void validate() const {
    if (restarts < 1 || max_iters < 1 || rel_tol <= 0.0)
      throw std::invalid_argument("SolverConfig: restarts >= 1, max_iters >= 1, rel_tol > 0");
  }
};

struct KNormResult {
  double value = 0.0;
  PureVector certificate;  // unit, Schmidt rank <= k, realizes `value`
  int k = 0;
  Method method = Method::seesaw;
  int restarts_used = 0;
  bool converged = false;
};

// Rank-constrained overlap identity: the supremum of |<s,t>|^2 over unit-HS
// matrices t of rank <= k equals the sum of the k largest squared singular
// values of s, attained at t0 = sQ/||sQ|| with Q the projector onto the
// top-k right-singular subspace. `value` is computed as the attained overlap
// |<s,t0>|^2, an arithmetic route independent of tau_k's singular-value sum.
struct RankKOverlap {
  double value = 0.0;
  Matrix certificate;  // m x n, rank <= k, unit Hilbert-Schmidt norm
};
RankKOverlap rank_k_overlap(const Matrix& s, int k);

// ||rho||_S(k): supremum of <xi|rho|xi> over unit xi of Schmidt rank <= k.
// Exact spectral for k = min(m,n); otherwise a multistart seesaw whose value
// is a certified lower bound on the supremum. Extra warm starts (e.g. the
// level k-1 certificate) may be supplied.
KNormResult knorm(const State& rho, int k, const SolverConfig& cfg = {},
                  std::span<const PureVector> warm_starts = {});

// |X|_S(k): infimum of <xi|X|xi> over unit xi of Schmidt rank <= k, for any
// Hermitian X, via the shift-reflect reduction |X|_S(k) =
// lambda_max - ||lambda_max I - X||_S(k). Upper bound on the true infimum
// when the seesaw is used.
KNormResult min_knorm(const HermitianOp& x, int k, const SolverConfig& cfg = {},
                      std::span<const PureVector> warm_starts = {});

// max tau_k over unit vectors of E; the certificate lies in E. Equals
// (dim E) * ||projection state of E||_S(k).
KNormResult subspace_max_tau(const Subspace& e, int k, const SolverConfig& cfg = {});

// Full profiles k = 1..min(m,n) with each level warm-started from the
// previous certificate, which enforces monotonicity of the reported values.
std::vector<KNormResult> knorm_profile(const State& rho, const SolverConfig& cfg = {});
std::vector<KNormResult> min_knorm_profile(const HermitianOp& x, const SolverConfig& cfg = {});

// Independent sampling oracle: max of <xi|rho|xi> over `samples` Haar-random
// unit vectors truncated to Schmidt rank <= k. Always a lower bound on the
// true k-norm.
double brute_force_knorm(const State& rho, int k, int samples, std::uint64_t seed = 0);

}  // namespace skw
