#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <utility>

#include "skw/tolerances.hpp"

namespace skw {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Dimensions of a bipartite system C^m (x) C^n. Degenerate 1 (x) n systems
// are rejected.
struct BipartiteDim {
  int m = 0;
  int n = 0;

  BipartiteDim(int m_, int n_) : m(m_), n(n_) {
    if (m < 2 || n < 2) throw std::invalid_argument("BipartiteDim: need m >= 2 and n >= 2");
  }

  int mn() const { return m * n; }
  int min_dim() const { return m < n ? m : n; }

  bool operator==(const BipartiteDim&) const = default;
};

// Hermitian operator on C^m (x) C^n, stored as a dense mn x mn matrix over
// the tensor basis |i>|j> with flat index i*n + j.
class HermitianOp {
 public:
  HermitianOp(BipartiteDim dim, Matrix entries);

  const BipartiteDim& dim() const { return dim_; }
  const Matrix& matrix() const { return mat_; }
  double trace() const { return mat_.trace().real(); }

 private:
  BipartiteDim dim_;
  Matrix mat_;
};

// Hermitian, positive semidefinite (within tol::psd) and unit trace.
class State : public HermitianOp {
 public:
  State(BipartiteDim dim, Matrix entries);
  explicit State(const HermitianOp& op) : State(op.dim(), op.matrix()) {}
};

// Unit vector in C^m (x) C^n.
class PureVector {
 public:
  PureVector(BipartiteDim dim, Vector amplitudes);

  const BipartiteDim& dim() const { return dim_; }
  const Vector& amplitudes() const { return amp_; }

 private:
  BipartiteDim dim_;
  Vector amp_;
};

// Schmidt decomposition of a vector: v = sum_i s_i |u_i>|w_i| with
// coefficients descending. Equivalently the SVD of the m x n reshaping.
struct SchmidtData {
  RealVector coefficients;  // length min(m,n), descending, >= 0
  Matrix left_vectors;      // m x min(m,n), orthonormal columns
  Matrix right_vectors;     // n x min(m,n), orthonormal columns
  int schmidt_rank = 0;     // count of s_i > tol::schmidt_rank * s_1
};

// Subspace of C^m (x) C^n given by an orthonormal basis (mn x d).
class Subspace {
 public:
  Subspace(BipartiteDim ambient, Matrix basis);

  // Orthonormalizes the columns of `span` (dropping dependent ones).
  static Subspace from_span(BipartiteDim ambient, const Matrix& span);

  const BipartiteDim& ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.cols()); }

  Matrix projector() const { return basis_ * basis_.adjoint(); }
  Subspace complement() const;

 private:
  BipartiteDim ambient_;
  Matrix basis_;
};

// --- operations ------------------------------------------------------------

// Row-major reshaping: entry (i,j) of the result is the amplitude of |i>|j>.
Matrix reshape_to_matrix(const BipartiteDim& dim, const Vector& v);
// Inverse of reshape_to_matrix.
Vector flatten_matrix(const BipartiteDim& dim, const Matrix& s);

SchmidtData schmidt_decompose(const PureVector& v);

// Sum of the k largest squared singular values of the reshaping of v.
// v need not be normalized.
double tau_k(const BipartiteDim& dim, const Vector& v, int k);

// Eigenvalues ascending with matching orthonormal eigenvectors as columns.
std::pair<RealVector, Matrix> hermitian_spectrum(const HermitianOp& h);

HermitianOp psd_sqrt(const State& rho);

// Transposes each n x n block of the M_m(M_n) block structure.
HermitianOp partial_transpose(const HermitianOp& h);

// Hilbert-Schmidt inner product tr(A^H B); real for Hermitian inputs.
double hs_inner(const HermitianOp& a, const HermitianOp& b);

// Maximally mixed state I/(mn).
State maximally_mixed(const BipartiteDim& dim);

// Projection state P_E / dim E, the canonical interior point of the face F_E.
State projection_state(const Subspace& e);

inline void check_k_range(const BipartiteDim& dim, int k) {
  if (k < 1 || k > dim.min_dim()) throw std::invalid_argument("k out of range [1, min(m,n)]");
}

}  // namespace skw
