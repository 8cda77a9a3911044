#pragma once

#include <cstdint>
#include <random>

#include "skw/linalg.hpp"

namespace skw {

// Deterministic random stream. Gaussian draws go through an explicit
// Box-Muller transform on raw engine bits, so sequences are identical across
// standard-library implementations, which std::normal_distribution does not
// guarantee.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) {}

  double uniform() {  // in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Complex complex_gaussian() {
    const double re = gaussian(), im = gaussian();
    return Complex(re, im) / std::sqrt(2.0);
  }

  Vector gaussian_vector(int size) {
    Vector v(size);
    for (int i = 0; i < size; ++i) v(i) = complex_gaussian();
    return v;
  }

  Matrix gaussian_matrix(int rows, int cols) {
    Matrix g(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) g(i, j) = complex_gaussian();
    return g;
  }

  // Haar-distributed isometry (rows >= cols) via QR of a Gaussian matrix with
  // the phase convention R_ii > 0.
  Matrix haar_isometry(int rows, int cols);

  // Haar-random unit vector.
  Vector unit_vector(int size) {
    Vector v = gaussian_vector(size);
    return v / v.norm();
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Full-rank random density matrix from the Ginibre ensemble: G G^H / tr.
Matrix random_density_matrix(const BipartiteDim& dim, RandomStream& rng);

}  // namespace skw
