#pragma once

// Numerical tolerances used across the library. Dimensions stay small
// (<= ~16x16 per factor), so double precision leaves ample headroom.
namespace skw::tol {

inline constexpr double herm = 1e-10;        // Hermiticity check
inline constexpr double trace = 1e-10;       // unit-trace check
inline constexpr double unit = 1e-10;        // unit-norm check
inline constexpr double orth = 1e-10;        // orthonormal-basis check
inline constexpr double psd = 1e-9;          // positive-semidefinite slack
inline constexpr double num = 1e-8;          // generic numerical agreement
inline constexpr double schmidt_rank = 1e-10; // rank cutoff, relative to s1

// Decision thresholds sitting on top of the heuristic optimizer. They must
// dominate optimizer noise; all closed-form test cases have margins >> 1e-4.
inline constexpr double blockpos = 1e-7;     // sign of min k-norm
inline constexpr double entangled = 1e-7;    // tau < 1 test for subspaces
inline constexpr double face = 1e-8;         // boundary-state eigenvalue slack
inline constexpr double rank_rel = 1e-8;     // range extraction, relative to lambda_max
inline constexpr double ray = 1e-8;          // bisection width on plane rays

}  // namespace skw::tol
