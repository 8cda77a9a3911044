#include "skw/random.hpp"

#include <Eigen/QR>

namespace skw {

Matrix RandomStream::haar_isometry(int rows, int cols) {
  Matrix g = gaussian_matrix(rows, cols);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = Matrix(qr.householderQ()).leftCols(cols);
  Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

Matrix random_density_matrix(const BipartiteDim& dim, RandomStream& rng) {
  const int d = dim.mn();
  Matrix g = rng.gaussian_matrix(d, d);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

}  // namespace skw
