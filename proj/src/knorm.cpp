#include "skw/knorm.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "skw/parallel.hpp"
#include "skw/random.hpp"

namespace skw {

std::string method_name(Method m) {
  switch (m) {
    case Method::exact_spectral: return "exact_spectral";
    case Method::closed_form: return "closed_form";
    case Method::seesaw: return "seesaw";
    case Method::brute_force: return "brute_force";
  }
  return "unknown";
}

RankKOverlap rank_k_overlap(const Matrix& s, int k) {
  const int min_dim = static_cast<int>(std::min(s.rows(), s.cols()));
  if (k < 1 || k > min_dim) throw std::invalid_argument("rank_k_overlap: k out of range");
  Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeThinV);
  if (svd.singularValues()(0) <= 0.0)
    throw std::invalid_argument("rank_k_overlap: zero matrix has no certificate");
  // Q projects onto the span of the top-k right-singular vectors; sQ is then
  // the rank-k truncation of s.
  const Matrix vk = svd.matrixV().leftCols(k);
  const Matrix sq = s * (vk * vk.adjoint());
  Matrix t0 = sq / sq.norm();
  const Complex overlap = (s.adjoint() * t0).trace();
  return {std::norm(overlap), std::move(t0)};
}

namespace {

// Rank-k factor pair: xi = sum_a u.col(a) (x) w.col(a) = vec(U W^T).
struct Factors {
  Matrix u;  // m x k
  Matrix w;  // n x k
};

Factors factors_from_vector(const BipartiteDim& dim, const Vector& xi, int k) {
  Eigen::JacobiSVD<Matrix> svd(reshape_to_matrix(dim, xi),
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  Factors f;
  f.u = svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal();
  f.w = svd.matrixV().leftCols(k).conjugate();
  return f;
}

Matrix orthonormal_columns(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  return Matrix(qr.householderQ()).leftCols(a.cols());
}

// Isometry mapping stacked columns of U to sum_a u_a (x) w_a, for fixed
// orthonormal w columns.
Matrix left_step_isometry(const BipartiteDim& dim, const Matrix& w) {
  const int k = static_cast<int>(w.cols());
  Matrix a = Matrix::Zero(dim.mn(), dim.m * k);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < dim.m; ++i)
      for (int j = 0; j < dim.n; ++j) a(i * dim.n + j, c * dim.m + i) = w(j, c);
  return a;
}

// Same with the roles swapped: maps stacked columns of W for fixed
// orthonormal u columns.
Matrix right_step_isometry(const BipartiteDim& dim, const Matrix& u) {
  const int k = static_cast<int>(u.cols());
  Matrix b = Matrix::Zero(dim.mn(), dim.n * k);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < dim.m; ++i)
      for (int j = 0; j < dim.n; ++j) b(i * dim.n + j, c * dim.n + j) = u(i, c);
  return b;
}

struct SeesawOutcome {
  double value = 0.0;
  Vector xi;
  bool converged = false;
};

// Alternating maximization of <xi|psd|xi> over unit xi = vec(U W^T). Each
// half-step fixes one factor (orthonormalized) and solves the induced
// Hermitian subproblem exactly by its top eigenvector, so the objective is
// nondecreasing.
SeesawOutcome seesaw_once(const Matrix& psd, const BipartiteDim& dim, int k,
                          const Vector& start, const SolverConfig& cfg) {
  Factors f = factors_from_vector(dim, start, k);
  SeesawOutcome out;
  Vector xi0 = Vector::Zero(dim.mn());
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < dim.m; ++i) xi0.segment(i * dim.n, dim.n) += f.u(i, c) * f.w.col(c);
  xi0 /= xi0.norm();
  out.xi = xi0;
  out.value = (xi0.adjoint() * psd * xi0).value().real();

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const double prev = out.value;

    f.w = orthonormal_columns(f.w);
    const Matrix a = left_step_isometry(dim, f.w);
    Eigen::SelfAdjointEigenSolver<Matrix> es_u(a.adjoint() * psd * a);
    const Vector top_u = es_u.eigenvectors().col(es_u.eigenvalues().size() - 1);
    for (int c = 0; c < k; ++c) f.u.col(c) = top_u.segment(c * dim.m, dim.m);

    f.u = orthonormal_columns(f.u);
    const Matrix b = right_step_isometry(dim, f.u);
    Eigen::SelfAdjointEigenSolver<Matrix> es_w(b.adjoint() * psd * b);
    const Vector top_w = es_w.eigenvectors().col(es_w.eigenvalues().size() - 1);
    for (int c = 0; c < k; ++c) f.w.col(c) = top_w.segment(c * dim.n, dim.n);

    out.value = es_w.eigenvalues()(es_w.eigenvalues().size() - 1);
    out.xi = b * top_w;

    if (std::abs(out.value - prev) <= cfg.rel_tol * std::max(1.0, std::abs(out.value))) {
      out.converged = true;
      break;
    }
  }
  out.xi /= out.xi.norm();
  return out;
}

struct PsdKNorm {
  double value = 0.0;
  Vector certificate;
  Method method = Method::seesaw;
  int restarts_used = 0;
  bool converged = false;
};

// Core driver on a PSD matrix (no trace normalization assumed; the objective
// is scale-invariant in xi, linear in psd).
PsdKNorm knorm_psd(const Matrix& psd, const BipartiteDim& dim, int k,
                   const SolverConfig& cfg, std::span<const Vector> warm_starts) {
  check_k_range(dim, k);
  cfg.validate();

  Eigen::SelfAdjointEigenSolver<Matrix> es(psd);
  const double lambda_max = es.eigenvalues()(es.eigenvalues().size() - 1);
  const Vector top = es.eigenvectors().col(es.eigenvalues().size() - 1);

  if (k == dim.min_dim()) return {lambda_max, top, Method::exact_spectral, 0, true};

  // Start list: spectral warm start (top eigenvector truncated to Schmidt
  // rank k through the overlap certificate), caller-provided warm starts,
  // then the randomized restarts on streams (seed, restart index).
  std::vector<Vector> starts;
  starts.reserve(warm_starts.size() + 1 + cfg.restarts);
  const RankKOverlap trunc = rank_k_overlap(reshape_to_matrix(dim, top), k);
  starts.push_back(flatten_matrix(dim, trunc.certificate));
  for (const Vector& v : warm_starts) starts.push_back(v);
  for (int r = 0; r < cfg.restarts; ++r) {
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(r));
    const Matrix u = rng.haar_isometry(dim.m, k);
    const Matrix w = rng.haar_isometry(dim.n, k);
    Vector xi = Vector::Zero(dim.mn());
    for (int c = 0; c < k; ++c)
      for (int i = 0; i < dim.m; ++i) xi.segment(i * dim.n, dim.n) += u(i, c) * w.col(c);
    starts.push_back(xi / xi.norm());
  }

  std::vector<SeesawOutcome> outcomes(starts.size());
  parallel::parallel_for(static_cast<int>(starts.size()), [&](int i) {
    outcomes[i] = seesaw_once(psd, dim, k, starts[i], cfg);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].value > outcomes[best].value) best = i;

  PsdKNorm out;
  // The supremum never exceeds the top eigenvalue; clip roundoff overshoot.
  out.value = std::min(outcomes[best].value, lambda_max);
  out.certificate = outcomes[best].xi;
  out.method = Method::seesaw;
  out.restarts_used = cfg.restarts;
  out.converged = outcomes[best].converged;
  return out;
}

std::vector<Vector> raw_starts(std::span<const PureVector> warm_starts) {
  std::vector<Vector> raw;
  raw.reserve(warm_starts.size());
  for (const PureVector& v : warm_starts) raw.push_back(v.amplitudes());
  return raw;
}

}  // namespace

KNormResult knorm(const State& rho, int k, const SolverConfig& cfg,
                  std::span<const PureVector> warm_starts) {
  const std::vector<Vector> warm = raw_starts(warm_starts);
  PsdKNorm r = knorm_psd(rho.matrix(), rho.dim(), k, cfg, warm);
  return {r.value, PureVector(rho.dim(), std::move(r.certificate)), k, r.method,
          r.restarts_used, r.converged};
}

KNormResult min_knorm(const HermitianOp& x, int k, const SolverConfig& cfg,
                      std::span<const PureVector> warm_starts) {
  check_k_range(x.dim(), k);
  auto [vals, vecs] = hermitian_spectrum(x);
  const double lambda_min = vals(0);
  const double lambda_max = vals(vals.size() - 1);
  if (k == x.dim().min_dim())
    return {lambda_min, PureVector(x.dim(), vecs.col(0)), k, Method::exact_spectral, 0, true};

  // Shift-reflect: |X|_S(k) = lambda_max - ||lambda_max I - X||_S(k). The
  // shifted operator is PSD, so the maximization driver applies.
  const Matrix shifted = lambda_max * Matrix::Identity(x.dim().mn(), x.dim().mn()) - x.matrix();
  const std::vector<Vector> warm = raw_starts(warm_starts);
  PsdKNorm r = knorm_psd(shifted, x.dim(), k, cfg, warm);
  return {lambda_max - r.value, PureVector(x.dim(), std::move(r.certificate)), k,
          Method::seesaw, r.restarts_used, r.converged};
}

KNormResult subspace_max_tau(const Subspace& e, int k, const SolverConfig& cfg) {
  check_k_range(e.ambient(), k);
  // max tau_k over unit xi in E equals max ||P_E eta||^2 over unit eta of
  // Schmidt rank <= k, with the maximizing xi the normalized projection of
  // eta. Run the k-norm driver on the projector and pull the certificate
  // back into E.
  PsdKNorm r = knorm_psd(e.projector(), e.ambient(), k, cfg, {});
  Vector xi = e.projector() * r.certificate;
  const double norm = xi.norm();
  if (norm < 1e-12)
    throw std::runtime_error("subspace_max_tau: optimizer certificate is orthogonal to E");
  xi /= norm;
  const double value = tau_k(e.ambient(), xi, k);
  return {value, PureVector(e.ambient(), std::move(xi)), k, r.method, r.restarts_used,
          r.converged};
}

std::vector<KNormResult> knorm_profile(const State& rho, const SolverConfig& cfg) {
  std::vector<KNormResult> out;
  out.reserve(rho.dim().min_dim());
  for (int k = 1; k <= rho.dim().min_dim(); ++k) {
    std::span<const PureVector> warm;
    if (!out.empty()) warm = std::span<const PureVector>(&out.back().certificate, 1);
    out.push_back(knorm(rho, k, cfg, warm));
    // The level k-1 certificate is a feasible level-k point, so warm-starting
    // makes the profile nondecreasing by construction; clip roundoff.
    if (out.size() > 1 && out[out.size() - 2].value > out.back().value)
      out.back().value = out[out.size() - 2].value;
  }
  return out;
}

std::vector<KNormResult> min_knorm_profile(const HermitianOp& x, const SolverConfig& cfg) {
  std::vector<KNormResult> out;
  out.reserve(x.dim().min_dim());
  for (int k = 1; k <= x.dim().min_dim(); ++k) {
    std::span<const PureVector> warm;
    if (!out.empty()) warm = std::span<const PureVector>(&out.back().certificate, 1);
    out.push_back(min_knorm(x, k, cfg, warm));
    if (out.size() > 1 && out[out.size() - 2].value < out.back().value)
      out.back().value = out[out.size() - 2].value;
  }
  return out;
}

double brute_force_knorm(const State& rho, int k, int samples, std::uint64_t seed) {
  check_k_range(rho.dim(), k);
  if (samples < 1) throw std::invalid_argument("brute_force_knorm: samples >= 1");
  const BipartiteDim dim = rho.dim();
  std::vector<double> vals(samples);
  parallel::parallel_for(samples, [&](int i) {
    RandomStream rng(seed, static_cast<std::uint64_t>(i));
    const Vector v = rng.unit_vector(dim.mn());
    const RankKOverlap trunc = rank_k_overlap(reshape_to_matrix(dim, v), k);
    const Vector xi = flatten_matrix(dim, trunc.certificate);
    vals[i] = (xi.adjoint() * rho.matrix() * xi).value().real();
  });
  return *std::max_element(vals.begin(), vals.end());
}

}  // namespace skw
