#include "skw/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace skw {

HermitianOp::HermitianOp(BipartiteDim dim, Matrix entries)
    : dim_(dim), mat_(std::move(entries)) {
  const int d = dim_.mn();
  if (mat_.rows() != d || mat_.cols() != d)
    throw std::invalid_argument("HermitianOp: matrix must be mn x mn");
  if (!mat_.allFinite()) throw std::invalid_argument("HermitianOp: non-finite entries");
  const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol::herm) throw std::invalid_argument("HermitianOp: matrix is not Hermitian");
}

State::State(BipartiteDim dim, Matrix entries) : HermitianOp(dim, std::move(entries)) {
  if (std::abs(trace() - 1.0) > tol::trace)
    throw std::invalid_argument("State: trace must equal 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::psd)
    throw std::invalid_argument("State: matrix is not positive semidefinite");
}

PureVector::PureVector(BipartiteDim dim, Vector amplitudes)
    : dim_(dim), amp_(std::move(amplitudes)) {
  if (amp_.size() != dim_.mn())
    throw std::invalid_argument("PureVector: amplitude length must equal m*n");
  if (!amp_.allFinite()) throw std::invalid_argument("PureVector: non-finite entries");
  if (std::abs(amp_.norm() - 1.0) > tol::unit)
    throw std::invalid_argument("PureVector: vector must be normalized");
}

Subspace::Subspace(BipartiteDim ambient, Matrix basis)
    : ambient_(ambient), basis_(std::move(basis)) {
  const int d = static_cast<int>(basis_.cols());
  if (basis_.rows() != ambient_.mn())
    throw std::invalid_argument("Subspace: basis rows must equal m*n");
  if (d < 1 || d > ambient_.mn())
    throw std::invalid_argument("Subspace: dimension must be in [1, mn]");
  const Matrix gram = basis_.adjoint() * basis_;
  if ((gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol::orth)
    throw std::invalid_argument("Subspace: basis columns are not orthonormal");
}

Subspace Subspace::from_span(BipartiteDim ambient, const Matrix& span) {
  if (span.rows() != ambient.mn() || span.cols() < 1)
    throw std::invalid_argument("Subspace: spanning set has wrong shape");
  // Orthonormalize by SVD, keeping the numerically nonzero directions.
  Eigen::JacobiSVD<Matrix> svd(span, Eigen::ComputeThinU);
  const double cutoff = svd.singularValues()(0) * 1e-12;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > cutoff) ++rank;
  if (rank == 0) throw std::invalid_argument("Subspace: spanning set is zero");
  return Subspace(ambient, svd.matrixU().leftCols(rank));
}

Subspace Subspace::complement() const {
  const int d = dimension();
  const int mn = ambient_.mn();
  if (d == mn) throw std::invalid_argument("Subspace: complement of the full space is trivial");
  // Full unitary extension of the basis; the trailing columns span E-perp.
  Eigen::HouseholderQR<Matrix> qr(basis_);
  Matrix q = qr.householderQ();
  return Subspace(ambient_, q.rightCols(mn - d));
}

Matrix reshape_to_matrix(const BipartiteDim& dim, const Vector& v) {
  if (v.size() != dim.mn())
    throw std::invalid_argument("reshape_to_matrix: length mismatch with m*n");
  Matrix s(dim.m, dim.n);
  for (int i = 0; i < dim.m; ++i)
    for (int j = 0; j < dim.n; ++j) s(i, j) = v(i * dim.n + j);
  return s;
}

Vector flatten_matrix(const BipartiteDim& dim, const Matrix& s) {
  if (s.rows() != dim.m || s.cols() != dim.n)
    throw std::invalid_argument("flatten_matrix: shape mismatch");
  Vector v(dim.mn());
  for (int i = 0; i < dim.m; ++i)
    for (int j = 0; j < dim.n; ++j) v(i * dim.n + j) = s(i, j);
  return v;
}

SchmidtData schmidt_decompose(const PureVector& v) {
  const BipartiteDim& dim = v.dim();
  Eigen::JacobiSVD<Matrix> svd(reshape_to_matrix(dim, v.amplitudes()),
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtData out;
  out.coefficients = svd.singularValues();
  out.left_vectors = svd.matrixU();
  // reshape(v) = sum_i s_i u_i v_i^H, so the ket-side right vectors are the
  // conjugated right singular vectors: v = sum_i s_i u_i (x) conj(v_i).
  out.right_vectors = svd.matrixV().conjugate();
  const double s1 = out.coefficients.size() > 0 ? out.coefficients(0) : 0.0;
  out.schmidt_rank = 0;
  if (s1 > 0.0)
    for (int i = 0; i < out.coefficients.size(); ++i)
      if (out.coefficients(i) > tol::schmidt_rank * s1) ++out.schmidt_rank;
  return out;
}

double tau_k(const BipartiteDim& dim, const Vector& v, int k) {
  check_k_range(dim, k);
  Eigen::JacobiSVD<Matrix> svd(reshape_to_matrix(dim, v));
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += svd.singularValues()(i) * svd.singularValues()(i);
  return sum;
}

std::pair<RealVector, Matrix> hermitian_spectrum(const HermitianOp& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_spectrum: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

HermitianOp psd_sqrt(const State& rho) {
  auto [vals, vecs] = hermitian_spectrum(rho);
  // Clamp tolerated negatives and eigensolver dust; sqrt would amplify an
  // O(1e-16) spurious eigenvalue into an O(1e-8) error.
  const double cut = 1e-14 * std::max(vals(vals.size() - 1), 0.0);
  RealVector roots(vals.size());
  for (int i = 0; i < vals.size(); ++i) roots(i) = vals(i) > cut ? std::sqrt(vals(i)) : 0.0;
  Matrix s = vecs * roots.asDiagonal() * vecs.adjoint();
  return HermitianOp(rho.dim(), (s + s.adjoint()) / 2.0);
}

HermitianOp partial_transpose(const HermitianOp& h) {
  const int m = h.dim().m, n = h.dim().n;
  Matrix out(h.dim().mn(), h.dim().mn());
  for (int i = 0; i < m; ++i)
    for (int ip = 0; ip < m; ++ip)
      out.block(i * n, ip * n, n, n) = h.matrix().block(i * n, ip * n, n, n).transpose();
  return HermitianOp(h.dim(), std::move(out));
}

double hs_inner(const HermitianOp& a, const HermitianOp& b) {
  if (!(a.dim() == b.dim())) throw std::invalid_argument("hs_inner: dimension mismatch");
  return (a.matrix().adjoint() * b.matrix()).trace().real();
}

State maximally_mixed(const BipartiteDim& dim) {
  return State(dim, Matrix::Identity(dim.mn(), dim.mn()) / double(dim.mn()));
}

State projection_state(const Subspace& e) {
  return State(e.ambient(), e.projector() / double(e.dimension()));
}

}  // namespace skw
