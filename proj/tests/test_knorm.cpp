#include <doctest.h>

#include <cmath>

#include "skw/knorm.hpp"
#include "skw/parallel.hpp"
#include "skw/random.hpp"
#include "test_util.hpp"

using namespace skw;

namespace {
const BipartiteDim d33(3, 3);

// Independent sampling bound for the rank-k overlap: random rank <= k
// matrices of unit Hilbert-Schmidt norm.
double sampled_overlap_max(const Matrix& s, int k, int samples, std::uint64_t seed) {
  RandomStream rng(seed);
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    Matrix t = rng.gaussian_matrix(s.rows(), k) * rng.gaussian_matrix(s.cols(), k).adjoint();
    t /= t.norm();
    best = std::max(best, std::norm((s.adjoint() * t).trace()));
  }
  return best;
}

void check_certificate(const KNormResult& r, const HermitianOp& op) {
  CHECK(std::abs(r.certificate.amplitudes().norm() - 1.0) < tol::unit);
  CHECK(schmidt_decompose(r.certificate).schmidt_rank <= r.k);
  const Vector& xi = r.certificate.amplitudes();
  const double rayleigh = (xi.adjoint() * op.matrix() * xi).value().real();
  CHECK(std::abs(rayleigh - r.value) < tol::num);
}
}  // namespace

TEST_SUITE("knorm") {

TEST_CASE("rank_k_overlap on closed-form inputs") {
  const RankKOverlap scaled_id = rank_k_overlap(Matrix::Identity(3, 3) / std::sqrt(3.0), 2);
  CHECK(scaled_id.value == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

  RandomStream rng(1);
  const Matrix rank1 = rng.gaussian_matrix(3, 1) * rng.gaussian_matrix(4, 1).adjoint();
  for (int k = 1; k <= 3; ++k)
    CHECK(rank_k_overlap(rank1, k).value ==
          doctest::Approx(rank1.squaredNorm()).epsilon(1e-12));

  CHECK_THROWS_AS(rank_k_overlap(Matrix::Zero(3, 3), 1), std::invalid_argument);
  CHECK_THROWS_AS(rank_k_overlap(Matrix::Identity(3, 3), 4), std::invalid_argument);
}

TEST_CASE("rank_k_overlap dominates random sampling and attains tau_k") {
  RandomStream rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix s = rng.gaussian_matrix(3, 3);
    const RankKOverlap r = rank_k_overlap(s, 2);

    // Same number through the singular-value route.
    CHECK(std::abs(r.value - tau_k(d33, flatten_matrix(d33, s), 2)) < 1e-10);

    // Certificate properties: rank <= k, unit norm, attains the value.
    CHECK(std::abs(r.certificate.norm() - 1.0) < 1e-12);
    Eigen::JacobiSVD<Matrix> svd(r.certificate);
    CHECK(svd.singularValues()(2) < 1e-12 * svd.singularValues()(0));
    CHECK(std::norm((s.adjoint() * r.certificate).trace()) ==
          doctest::Approx(r.value).epsilon(1e-12));

    // The sampling oracle never exceeds the identity value.
    const double sampled = sampled_overlap_max(s, 2, 20000, 77 + trial);
    CHECK(sampled <= r.value + 1e-10);
    CHECK(sampled > 0.5 * r.value);  // and lands in the right ballpark
  }
}

TEST_CASE("knorm of the maximally entangled state is k/n") {
  for (int n : {2, 3, 4}) {
    const State rho(build(FamilySpec::simple(Family::max_entangled, BipartiteDim(n, n))));
    for (int k = 1; k <= n; ++k) {
      const KNormResult r = knorm(rho, k);
      CHECK(r.value == doctest::Approx(double(k) / double(n)).epsilon(1e-10));
      check_certificate(r, rho);
    }
  }
}

TEST_CASE("knorm of the antisymmetric projection state") {
  const State rho(build(FamilySpec::simple(Family::antisymmetric, d33)));
  CHECK(knorm(rho, 1).value == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  CHECK(knorm(rho, 2).value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(knorm(rho, 3).value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(knorm(rho, 3).method == Method::exact_spectral);
}

TEST_CASE("knorm of rho2 and the rho3 ladder") {
  const State rho2 = test::catalog_state(Family::rho2);
  CHECK(knorm(rho2, 1).value == doctest::Approx(0.5).epsilon(1e-10));

  const State rho3 = test::catalog_state(Family::rho3);
  double prev = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const KNormResult r = knorm(rho3, k);
    CHECK(r.value == doctest::Approx(double(k) / 3.0).epsilon(1e-10));
    CHECK(r.value > prev);  // strictly increasing: the range span{xi3} is 2-entangled
    prev = r.value;
  }

  CHECK_THROWS_AS(knorm(rho3, 0), std::invalid_argument);
  CHECK_THROWS_AS(knorm(rho3, 4), std::invalid_argument);
}

TEST_CASE("min_knorm closed-form cases") {
  const State rho3 = test::catalog_state(Family::rho3);
  CHECK(std::abs(min_knorm(rho3, 3).value) < 1e-12);
  CHECK(min_knorm(rho3, 3).method == Method::exact_spectral);

  // omega_{3,2} sits exactly on the BP_2 boundary.
  CHECK(std::abs(min_knorm(test::omega_op(3, 2), 2).value) < 1e-9);

  const State uniform = maximally_mixed(d33);
  for (int k = 1; k <= 3; ++k)
    CHECK(min_knorm(uniform, k).value == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("min_knorm certificate realizes the reported value") {
  for (int trial = 0; trial < 3; ++trial) {
    const State rho = test::random_state(d33, 900 + trial);
    for (int k = 1; k <= 2; ++k) check_certificate(min_knorm(rho, k), rho);
  }
}

TEST_CASE("subspace_max_tau") {
  const Subspace line3 = test::span_of(d33, {catalog_vector(3).amplitudes()});
  const KNormResult r = subspace_max_tau(line3, 2);
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  // certificate lies in the subspace
  CHECK(std::abs(std::abs((catalog_vector(3).amplitudes().adjoint() *
                           r.certificate.amplitudes())
                              .value()) -
                 1.0) < 1e-9);

  const Subspace full(d33, Matrix::Identity(9, 9));
  CHECK(subspace_max_tau(full, 1).value == doctest::Approx(1.0).epsilon(1e-9));

  // Antisymmetric subspace of 3x3: (dim E) * S(1) norm of its projection state.
  const Subspace antisym = test::span_of(d33, {antisymmetric_unit(d33, 1, 0).amplitudes(),
                                               antisymmetric_unit(d33, 2, 0).amplitudes(),
                                               antisymmetric_unit(d33, 2, 1).amplitudes()});
  CHECK(subspace_max_tau(antisym, 1).value == doctest::Approx(0.5).epsilon(1e-9));

  // Agreement with the projection-state route.
  const State rho_e = projection_state(antisym);
  CHECK(subspace_max_tau(antisym, 1).value ==
        doctest::Approx(3.0 * knorm(rho_e, 1).value).epsilon(1e-8));
}

TEST_CASE("brute force sampling is a sandwich bound") {
  const State uniform = maximally_mixed(d33);
  CHECK(brute_force_knorm(uniform, 2, 200, 3) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

  const State ent(build(FamilySpec::simple(Family::max_entangled, d33)));
  const double bf = brute_force_knorm(ent, 1, 20000, 4);
  CHECK(bf <= 1.0 / 3.0 + 1e-12);
  CHECK(bf > 0.30);

  // Plain sampling concentrates like samples^(-1/4) on the 8-real-dimensional
  // product manifold, so the gap at 1e5 samples sits around 1e-2.
  for (int trial = 0; trial < 3; ++trial) {
    const State rho = test::random_state(d33, 40 + trial);
    const double lower = brute_force_knorm(rho, 1, 100000, 5 + trial);
    const double opt = knorm(rho, 1).value;
    const double lmax = hermitian_spectrum(rho).first(8);
    CHECK(lower <= opt + 1e-12);
    CHECK(opt <= lmax + 1e-12);
    CHECK(opt - lower < 0.05);
  }

  CHECK_THROWS_AS(brute_force_knorm(uniform, 1, 0, 0), std::invalid_argument);
}

TEST_CASE("larger systems stay on the closed-form values") {
  SolverConfig cfg;
  cfg.restarts = 4;  // the spectral warm start already sits on the optimum
  const BipartiteDim d88(8, 8);
  const State ent(build(FamilySpec::simple(Family::max_entangled, d88)));
  CHECK(knorm(ent, 3, cfg).value == doctest::Approx(3.0 / 8.0).epsilon(1e-9));
  const State antisym(build(FamilySpec::simple(Family::antisymmetric, BipartiteDim(5, 5))));
  CHECK(knorm(antisym, 2, cfg).value == doctest::Approx(0.1).epsilon(1e-8));
}

TEST_CASE("profiles are monotone with feasible certificates") {
  for (auto dim : {d33, BipartiteDim(2, 2), BipartiteDim(2, 4)}) {
    for (int trial = 0; trial < 3; ++trial) {
      const State rho = test::random_state(dim, 60 + trial);
      const auto up = knorm_profile(rho);
      const auto down = min_knorm_profile(rho);
      auto [vals, vecs] = hermitian_spectrum(rho);
      for (std::size_t i = 0; i + 1 < up.size(); ++i) {
        CHECK(up[i].value <= up[i + 1].value);
        CHECK(down[i].value >= down[i + 1].value);
      }
      CHECK(up.back().value == doctest::Approx(vals(vals.size() - 1)).epsilon(1e-13));
      CHECK(down.back().value == doctest::Approx(vals(0)).epsilon(1e-13));
      CHECK(up.front().value >= 1.0 / double(dim.mn()) - 1e-12);
      for (const auto& r : up) check_certificate(r, rho);
      for (const auto& r : down) check_certificate(r, rho);
    }
  }
}

TEST_CASE("solver config validation and convergence reporting") {
  const State rho = test::random_state(d33, 71);
  SolverConfig bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(knorm(rho, 1, bad), std::invalid_argument);

  SolverConfig strict;
  strict.max_iters = 1;
  strict.rel_tol = 1e-16;
  const KNormResult starved = knorm(rho, 1, strict);
  CHECK_FALSE(starved.converged);

  const KNormResult ok = knorm(rho, 1);
  CHECK(ok.converged);
  CHECK(ok.restarts_used == 64);
}

TEST_CASE("parallel restarts reproduce the serial reference exactly") {
  const State rho = test::random_state(d33, 81);
  SolverConfig cfg;
  cfg.restarts = 16;

  parallel::set_enabled(false);
  const KNormResult serial = knorm(rho, 2, cfg);
  const double bf_serial = brute_force_knorm(rho, 1, 2000, 9);
  parallel::set_enabled(true);
  const KNormResult threaded = knorm(rho, 2, cfg);
  const double bf_threaded = brute_force_knorm(rho, 1, 2000, 9);

  CHECK(serial.value == threaded.value);
  CHECK((serial.certificate.amplitudes() - threaded.certificate.amplitudes()).norm() == 0.0);
  CHECK(bf_serial == bf_threaded);
}

}  // TEST_SUITE
