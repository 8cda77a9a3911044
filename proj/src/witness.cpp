#include "skw/witness.hpp"

#include <cmath>

namespace skw {

namespace {

double beta_from_norm(const BipartiteDim& dim, double norm_value) {
  const double denom = double(dim.mn()) * norm_value - 1.0;
  if (std::abs(denom) < 1e-12)
    throw DegenerateFamilyError("beta threshold undefined: mn * norm = 1");
  return -1.0 / denom;
}

// Eigenvectors whose eigenvalue sits within `window` of the extreme value.
Subspace eigen_cluster(const HermitianOp& h, bool top, double window) {
  auto [vals, vecs] = hermitian_spectrum(h);
  const int d = static_cast<int>(vals.size());
  const double extreme = top ? vals(d - 1) : vals(0);
  int lo = 0, hi = d;
  if (top) {
    lo = d - 1;
    while (lo > 0 && vals(lo - 1) >= extreme - window) --lo;
  } else {
    hi = 1;
    while (hi < d && vals(hi) <= extreme + window) ++hi;
    lo = 0;
  }
  return Subspace(h.dim(), vecs.middleCols(lo, top ? d - lo : hi));
}

}  // namespace

HermitianOp x_lambda(const State& rho, double lambda) {
  const int d = rho.dim().mn();
  Matrix x = (1.0 - lambda) / double(d) * Matrix::Identity(d, d) + lambda * rho.matrix();
  return HermitianOp(rho.dim(), std::move(x));
}

BetaThresholds beta_thresholds(const State& rho, const SolverConfig& cfg) {
  const BipartiteDim& dim = rho.dim();
  const Matrix uniform = Matrix::Identity(dim.mn(), dim.mn()) / double(dim.mn());
  if ((rho.matrix() - uniform).cwiseAbs().maxCoeff() < 1e-12)
    throw DegenerateFamilyError("beta_thresholds: rho equals the maximally mixed state");

  BetaThresholds out{dim, {}, {}};
  for (const KNormResult& r : knorm_profile(rho, cfg))
    out.beta_minus.push_back(beta_from_norm(dim, r.value));
  for (const KNormResult& r : min_knorm_profile(rho, cfg))
    out.beta_plus.push_back(beta_from_norm(dim, r.value));
  return out;
}

bool is_k_blockpositive(const HermitianOp& x, int k, const SolverConfig& cfg,
                        std::span<const PureVector> warm_starts) {
  return min_knorm(x, k, cfg, warm_starts).value >= -tol::blockpos;
}

WitnessClass classify_witness(const HermitianOp& x, const SolverConfig& cfg) {
  if (std::abs(x.trace() - 1.0) > tol::trace)
    throw std::invalid_argument("classify_witness: trace must equal 1");
  const int min_dim = x.dim().min_dim();
  WitnessClass out;
  // BP_k sets are nested, so the first failing level ends the scan.
  for (int k = 1; k <= min_dim; ++k) {
    if (!is_k_blockpositive(x, k, cfg)) break;
    out.max_bp_level = k;
  }
  out.is_state = out.max_bp_level == min_dim;
  if (out.max_bp_level >= 1 && out.max_bp_level < min_dim)
    out.witnessed_schmidt_number = out.max_bp_level + 1;
  return out;
}

HermitianOp witness_from_state(const State& rho, int k, const SolverConfig& cfg) {
  const BipartiteDim& dim = rho.dim();
  check_k_range(dim, k);
  if (k == dim.min_dim())
    throw std::invalid_argument(
        "witness_from_state: no Schmidt number min(m,n)+1 witness exists");
  KNormResult at_k = knorm(rho, k, cfg);
  std::span<const PureVector> warm(&at_k.certificate, 1);
  KNormResult at_k1 = knorm(rho, k + 1, cfg, warm);
  if (!(at_k1.value > at_k.value + tol::num))
    throw std::invalid_argument(
        "witness_from_state: ||rho||_S(k+1) must exceed ||rho||_S(k)");

  const double alpha = at_k.value;
  const double scale = alpha * double(dim.mn()) - 1.0;  // > 0 since alpha > 1/mn here
  Matrix w = (alpha * Matrix::Identity(dim.mn(), dim.mn()) - rho.matrix()) / scale;
  return HermitianOp(dim, std::move(w));
}

FaceLocation face_outside(const HermitianOp& x) {
  const BipartiteDim& dim = x.dim();
  if (std::abs(x.trace() - 1.0) > tol::trace)
    throw std::invalid_argument("face_outside: trace must equal 1");
  auto [vals, vecs] = hermitian_spectrum(x);
  const double mu_min = vals(0);
  if (mu_min >= -tol::psd)
    throw std::invalid_argument("face_outside: X is positive semidefinite, no face");

  // rho* is scalar, so the segment (1-s) rho* + s X has eigenvalues
  // (1-s)/mn + s mu_i on the eigenvectors of X. The first one to vanish as s
  // grows belongs to mu_min, at s = 1/(1 - mn mu_min).
  const double crossing = 1.0 / (1.0 - double(dim.mn()) * mu_min);
  const int d = dim.mn();
  Matrix b = (1.0 - crossing) / double(d) * Matrix::Identity(d, d) + crossing * x.matrix();
  State boundary(dim, (b + b.adjoint()) / 2.0);

  auto [bvals, bvecs] = hermitian_spectrum(boundary);
  const double rank_cut = tol::rank_rel * bvals(d - 1);
  int null_dim = 0;
  while (null_dim < d && bvals(null_dim) <= rank_cut) ++null_dim;
  if (null_dim == 0 || null_dim == d)
    throw std::runtime_error("face_outside: degenerate boundary spectrum");
  Subspace range(dim, bvecs.rightCols(d - null_dim));
  return {crossing, std::move(boundary), std::move(range), null_dim};
}

bool is_k_entangled(const Subspace& e, int k, const SolverConfig& cfg) {
  check_k_range(e.ambient(), k);
  return subspace_max_tau(e, k, cfg).value < 1.0 - tol::entangled;
}

int entanglement_order(const Subspace& e, const SolverConfig& cfg) {
  int order = 0;
  for (int k = 1; k <= e.ambient().min_dim(); ++k) {
    if (!is_k_entangled(e, k, cfg)) break;
    order = k;
  }
  return order;
}

FaceWitnessReport witnesses_outside_face(const Subspace& e, const SolverConfig& cfg) {
  const BipartiteDim& dim = e.ambient();
  if (e.dimension() >= dim.mn())
    throw std::invalid_argument("witnesses_outside_face: face must be proper");

  FaceWitnessReport out;
  out.dim_e = e.dimension();
  out.max_witness_level = entanglement_order(e.complement(), cfg);
  if (out.max_witness_level >= 1)
    for (int sn = 2; sn <= out.max_witness_level + 1; ++sn)
      out.admissible_levels.push_back(sn);
  // Necessary condition: Schmidt number k+1 witnesses outside F_E need
  // dim E >= k(m+n-k), since larger complements contain rank <= k vectors.
  for (int k = 0; k <= dim.min_dim(); ++k)
    if (out.dim_e >= k * (dim.m + dim.n - k)) out.dim_bound_max_level = k;
  return out;
}

OppositeFaceData opposite_face_data(const Subspace& e) {
  if (e.dimension() >= e.ambient().mn())
    throw std::invalid_argument("opposite_face_data: subspace must be proper");
  return {projection_state(e), projection_state(e.complement())};
}

ExtremalBoundaryCheck extremal_boundary_check(const State& rho, int k,
                                              const SolverConfig& cfg) {
  check_k_range(rho.dim(), k);
  auto [vals, vecs] = hermitian_spectrum(rho);
  const double lambda_min = vals(0);
  const double lambda_max = vals(vals.size() - 1);
  const double cluster_window = 1e-8 * std::max(1.0, std::abs(lambda_max));

  ExtremalBoundaryCheck out;
  out.interior_minus = knorm(rho, k, cfg).value < lambda_max - tol::num;
  out.interior_plus = min_knorm(rho, k, cfg).value > lambda_min + tol::num;
  out.entangled_top = is_k_entangled(eigen_cluster(rho, true, cluster_window), k, cfg);
  out.entangled_bottom = is_k_entangled(eigen_cluster(rho, false, cluster_window), k, cfg);
  return out;
}

}  // namespace skw
