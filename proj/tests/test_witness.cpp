#include <doctest.h>

#include <cmath>

#include "skw/witness.hpp"
#include "test_util.hpp"

using namespace skw;

namespace {
const BipartiteDim d33(3, 3);

SolverConfig quick() {
  SolverConfig cfg;
  cfg.restarts = 24;
  return cfg;
}
}  // namespace

TEST_SUITE("witness") {

TEST_CASE("x_lambda endpoints and named points") {
  const State rho3 = test::catalog_state(Family::rho3);
  CHECK((x_lambda(rho3, 0.0).matrix() - maximally_mixed(d33).matrix()).cwiseAbs().maxCoeff() <
        1e-15);
  CHECK((x_lambda(rho3, 1.0).matrix() - rho3.matrix()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((x_lambda(rho3, -0.2).matrix() - test::omega_op(3, 2).matrix()).cwiseAbs().maxCoeff() <
        1e-14);

  const State ent(build(FamilySpec::simple(Family::max_entangled, d33)));
  FamilySpec iso{Family::isotropic, d33, 0.35, {}, {}, {}};
  CHECK((x_lambda(ent, 0.35).matrix() - build(iso).matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("beta thresholds of the named states") {
  const State ent(build(FamilySpec::simple(Family::max_entangled, d33)));
  const BetaThresholds ent_beta = beta_thresholds(ent, quick());
  for (int k = 1; k <= 3; ++k)
    CHECK(ent_beta.beta_minus[k - 1] ==
          doctest::Approx(-1.0 / double(3 * k - 1)).epsilon(1e-9));
  // every plus threshold of a pure state family is 1
  for (double bp : ent_beta.beta_plus) CHECK(bp == doctest::Approx(1.0).epsilon(1e-9));

  const State antisym(build(FamilySpec::simple(Family::antisymmetric, d33)));
  const BetaThresholds anti_beta = beta_thresholds(antisym, quick());
  CHECK(anti_beta.beta_minus[0] == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(anti_beta.beta_minus[1] == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(anti_beta.beta_minus[2] == doctest::Approx(-0.5).epsilon(1e-8));

  const State rho3 = test::catalog_state(Family::rho3);
  const BetaThresholds rho3_beta = beta_thresholds(rho3, quick());
  CHECK(rho3_beta.beta_minus[0] == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(rho3_beta.beta_minus[1] == doctest::Approx(-0.2).epsilon(1e-9));
  CHECK(rho3_beta.beta_minus[2] == doctest::Approx(-0.125).epsilon(1e-9));
  CHECK(rho3_beta.delta_minus() == doctest::Approx(-0.125).epsilon(1e-9));

  CHECK_THROWS_AS(beta_thresholds(maximally_mixed(d33), quick()), DegenerateFamilyError);
}

TEST_CASE("beta plus chain is strict when the top eigenspace complement is entangled") {
  // rho_E for E = span{xi3}-perp: beta_plus = (4, 8/5, 1).
  const Subspace line3 = test::span_of(d33, {catalog_vector(3).amplitudes()});
  const State rho_e = projection_state(line3.complement());
  const BetaThresholds beta = beta_thresholds(rho_e, quick());
  CHECK(beta.beta_plus[0] == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(beta.beta_plus[1] == doctest::Approx(1.6).epsilon(1e-8));
  CHECK(beta.beta_plus[2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(beta.beta_plus[2] < beta.beta_plus[1]);
  CHECK(beta.beta_plus[1] < beta.beta_plus[0]);
}

TEST_CASE("interval correctness around the thresholds") {
  const State rho3 = test::catalog_state(Family::rho3);
  const BetaThresholds beta = beta_thresholds(rho3, quick());
  for (int k = 1; k <= 2; ++k) {
    const double bm = beta.beta_minus[k - 1];
    CHECK(is_k_blockpositive(x_lambda(rho3, bm + 1e-6), k, quick()));
    CHECK_FALSE(is_k_blockpositive(x_lambda(rho3, bm - 1e-3), k, quick()));
    const double bp = beta.beta_plus[k - 1];
    CHECK(is_k_blockpositive(x_lambda(rho3, bp - 1e-6), k, quick()));
    CHECK_FALSE(is_k_blockpositive(x_lambda(rho3, bp + 1e-3), k, quick()));
  }
}

TEST_CASE("interval correctness on random states") {
  SolverConfig cfg;
  cfg.restarts = 8;
  for (int trial = 0; trial < 20; ++trial) {
    const State rho = test::random_state(d33, 1300 + trial);
    // The binding certificates make the just-outside violations visible to
    // the solver immediately, whatever the restart budget.
    std::vector<PureVector> warm;
    for (const auto& r : knorm_profile(rho, cfg)) warm.push_back(r.certificate);
    for (const auto& r : min_knorm_profile(rho, cfg)) warm.push_back(r.certificate);
    const BetaThresholds beta = beta_thresholds(rho, cfg);
    for (int k = 1; k <= 3; ++k) {
      CAPTURE(trial);
      CAPTURE(k);
      const double bm = beta.beta_minus[k - 1];
      CHECK(is_k_blockpositive(x_lambda(rho, bm + 1e-6), k, cfg, warm));
      CHECK_FALSE(is_k_blockpositive(x_lambda(rho, bm - 1e-3), k, cfg, warm));
      const double bp = beta.beta_plus[k - 1];
      CHECK(is_k_blockpositive(x_lambda(rho, bp - 1e-6), k, cfg, warm));
      CHECK_FALSE(is_k_blockpositive(x_lambda(rho, bp + 1e-3), k, cfg, warm));
    }
  }
}

TEST_CASE("blockpositivity of named operators") {
  for (int k = 1; k <= 3; ++k) {
    CHECK(is_k_blockpositive(maximally_mixed(d33), k, quick()));
    CHECK(is_k_blockpositive(test::catalog_state(Family::rho3), k, quick()));
    const HermitianOp neg(d33, -Matrix::Identity(9, 9) / 9.0);
    CHECK_FALSE(is_k_blockpositive(neg, k, quick()));
  }
  CHECK(is_k_blockpositive(test::omega_op(3, 1), 1, quick()));
  CHECK_FALSE(is_k_blockpositive(test::omega_op(3, 1), 2, quick()));
}

TEST_CASE("witness classification along the rho3 line") {
  const State rho3 = test::catalog_state(Family::rho3);

  // lambda in (beta1-, beta2-) = (-1/2, -1/5): 1-blockpositive only.
  for (double lambda : {-0.4, -0.21}) {
    const WitnessClass w = classify_witness(x_lambda(rho3, lambda), quick());
    CHECK(w.max_bp_level == 1);
    CHECK_FALSE(w.is_state);
    REQUIRE(w.witnessed_schmidt_number.has_value());
    CHECK(*w.witnessed_schmidt_number == 2);
  }

  // lambda in (beta2-, beta3-) = (-1/5, -1/8): Schmidt number 3 witness.
  const WitnessClass w3 = classify_witness(x_lambda(rho3, -0.15), quick());
  CHECK(w3.max_bp_level == 2);
  REQUIRE(w3.witnessed_schmidt_number.has_value());
  CHECK(*w3.witnessed_schmidt_number == 3);

  const WitnessClass ws = classify_witness(maximally_mixed(d33), quick());
  CHECK(ws.is_state);
  CHECK(ws.max_bp_level == 3);
  CHECK_FALSE(ws.witnessed_schmidt_number.has_value());

  CHECK_THROWS_AS(classify_witness(HermitianOp(d33, Matrix::Identity(9, 9)), quick()),
                  std::invalid_argument);
}

TEST_CASE("tomiyama points classify as Schmidt number k+1 witnesses") {
  const WitnessClass w1 = classify_witness(HermitianOp(tomiyama_point(3, 1)), quick());
  CHECK(w1.max_bp_level == 1);
  CHECK(*w1.witnessed_schmidt_number == 2);
  const WitnessClass w2 = classify_witness(HermitianOp(tomiyama_point(3, 2)), quick());
  CHECK(w2.max_bp_level == 2);
  CHECK(*w2.witnessed_schmidt_number == 3);
}

TEST_CASE("witness_from_state reproduces the catalog witnesses") {
  const State ent(build(FamilySpec::simple(Family::max_entangled, d33)));
  const HermitianOp w_ent = witness_from_state(ent, 1, quick());
  CHECK((w_ent.matrix() - x_lambda(ent, -0.5).matrix()).cwiseAbs().maxCoeff() < 1e-8);

  const State rho2 = test::catalog_state(Family::rho2);
  const HermitianOp w21 = witness_from_state(rho2, 1, quick());
  CHECK((w21.matrix() - test::omega_op(2, 1).matrix()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(std::abs(min_knorm(w21, 1, quick()).value) < tol::blockpos);

  CHECK_THROWS_AS(witness_from_state(maximally_mixed(d33), 1, quick()),
                  std::invalid_argument);
  CHECK_THROWS_AS(witness_from_state(rho2, 3, quick()), std::invalid_argument);
}

TEST_CASE("face_outside locates the crossing in closed form") {
  const FaceLocation loc = face_outside(test::omega_op(3, 1));
  CHECK(loc.crossing == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(loc.range_subspace.dimension() == 8);
  CHECK(loc.corank == 1);
  CHECK((loc.range_subspace.basis().adjoint() * catalog_vector(3).amplitudes()).norm() <
        1e-10);

  // simple diagonal example: lambda_min = -1/9 gives crossing 1/2
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(9, 5.0 / 36.0);
  diag(4) = -1.0 / 9.0;
  const HermitianOp x(d33, diag.cast<Complex>().asDiagonal());
  CHECK(face_outside(x).crossing == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(face_outside(maximally_mixed(d33)), std::invalid_argument);
  CHECK_THROWS_AS(face_outside(test::catalog_state(Family::rho3)), std::invalid_argument);
}

TEST_CASE("face_outside hits the range of the delta-minus boundary state") {
  const State rho = test::random_state(d33, 321);
  const BetaThresholds beta = beta_thresholds(rho, quick());
  const HermitianOp far = x_lambda(rho, beta.delta_minus() - 0.7);
  const FaceLocation loc = face_outside(far);

  const HermitianOp boundary = x_lambda(rho, beta.delta_minus());
  auto [vals, vecs] = hermitian_spectrum(boundary);
  int null_dim = 0;
  while (null_dim < 9 && vals(null_dim) <= tol::rank_rel * vals(8)) ++null_dim;
  const Matrix p_expected = vecs.rightCols(9 - null_dim) *
                            vecs.rightCols(9 - null_dim).adjoint();
  CHECK((loc.range_subspace.projector() - p_expected).cwiseAbs().maxCoeff() < 1e-7);

  // crossing is stable under moving the start further out along the segment
  const FaceLocation loc2 = face_outside(x_lambda(rho, beta.delta_minus() - 1.4));
  CHECK((loc2.range_subspace.projector() - p_expected).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("face_outside on random nonpositive matrices") {
  RandomStream rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    // random Hermitian direction, pushed past the boundary from rho*
    const Matrix g = rng.gaussian_matrix(9, 9);
    Matrix h = (g + g.adjoint()) / 2.0;
    h -= (h.trace().real() / 9.0) * Matrix::Identity(9, 9);
    h /= h.norm();
    const HermitianOp x(d33, Matrix::Identity(9, 9) / 9.0 + 1.5 * h);
    auto [vals, vecs] = hermitian_spectrum(x);
    if (vals(0) >= -tol::psd) continue;

    const FaceLocation loc = face_outside(x);
    CHECK(loc.crossing > 0.0);
    CHECK(loc.crossing < 1.0);
    CHECK(loc.corank >= 1);
    CHECK(loc.corank + loc.range_subspace.dimension() == 9);
    auto [bvals, bvecs] = hermitian_spectrum(loc.boundary_state);
    CHECK(bvals(0) > -tol::psd);
    CHECK(bvals(0) < tol::face);
    // the boundary state lies on the segment from x to rho*
    const Matrix on_segment = (1.0 - loc.crossing) * Matrix::Identity(9, 9) / 9.0 +
                              loc.crossing * x.matrix();
    CHECK((loc.boundary_state.matrix() - on_segment).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("k-entangled subspace tests from the catalog") {
  const Subspace line3 = test::span_of(d33, {catalog_vector(3).amplitudes()});
  CHECK(is_k_entangled(line3, 2, quick()));
  CHECK_FALSE(is_k_entangled(line3, 3, quick()));
  CHECK(entanglement_order(line3, quick()) == 2);

  const Subspace line2 = test::span_of(d33, {catalog_vector(2).amplitudes()});
  CHECK(is_k_entangled(line2, 1, quick()));
  CHECK_FALSE(is_k_entangled(line2, 2, quick()));
  CHECK(entanglement_order(line2, quick()) == 1);

  const Subspace line1 = test::span_of(d33, {catalog_vector(1).amplitudes()});
  CHECK(entanglement_order(line1, quick()) == 0);

  const Subspace full(d33, Matrix::Identity(9, 9));
  CHECK(entanglement_order(full, quick()) == 0);

  // dim E > (m-k)(n-k) forces a Schmidt rank <= k vector in E.
  RandomStream rng(17);
  const Subspace big = Subspace::from_span(d33, rng.gaussian_matrix(9, 5));
  CHECK_FALSE(is_k_entangled(big, 1, quick()));
  // at k = 2 the bound is (3-2)(3-2) = 1: any plane contains a rank <= 2 vector
  const Subspace plane = Subspace::from_span(d33, rng.gaussian_matrix(9, 2));
  CHECK_FALSE(is_k_entangled(plane, 2, quick()));
}

TEST_CASE("generic subspaces flip entanglement at the dimension thresholds") {
  SolverConfig cfg;
  cfg.restarts = 32;
  for (int trial = 0; trial < 5; ++trial) {
    RandomStream rng(2600 + trial);
    // 3x3, k = 1: the product variety misses a generic 4-dim subspace but
    // meets every 5-dim one.
    CHECK(is_k_entangled(Subspace::from_span(d33, rng.gaussian_matrix(9, 4)), 1, cfg));
    CHECK_FALSE(
        is_k_entangled(Subspace::from_span(d33, rng.gaussian_matrix(9, 5)), 1, cfg));
    // 3x3, k = 2: a generic line is 2-entangled, a generic plane is not.
    CHECK(is_k_entangled(Subspace::from_span(d33, rng.gaussian_matrix(9, 1)), 2, cfg));
    CHECK_FALSE(
        is_k_entangled(Subspace::from_span(d33, rng.gaussian_matrix(9, 2)), 2, cfg));
    // 2x4, k = 1: threshold sits between dim 3 and dim 4.
    const BipartiteDim d24(2, 4);
    CHECK(is_k_entangled(Subspace::from_span(d24, rng.gaussian_matrix(8, 3)), 1, cfg));
    CHECK_FALSE(
        is_k_entangled(Subspace::from_span(d24, rng.gaussian_matrix(8, 4)), 1, cfg));
  }
}

TEST_CASE("the BP_1 region extends beyond sigma_2 on its ray from the center") {
  const Matrix sigma2 = test::catalog_state(Family::sigma2).matrix();
  const Matrix center = maximally_mixed(d33).matrix();
  const HermitianOp beyond(d33, center + 1.05 * (sigma2 - center));
  CHECK(hermitian_spectrum(beyond).first(0) < -tol::psd);  // past the state body
  CHECK(is_k_blockpositive(beyond, 1, quick()));           // still 1-blockpositive
}

TEST_CASE("witness existence outside the catalog faces") {
  const Vector xi1 = catalog_vector(1).amplitudes();
  const Vector xi2 = catalog_vector(2).amplitudes();
  const Vector xi3 = catalog_vector(3).amplitudes();

  // edge rho3--rho_i: E-perp has codimension 2, hence a product vector
  for (const Vector* xi : {&xi1, &xi2}) {
    const FaceWitnessReport r =
        witnesses_outside_face(test::span_of(d33, {xi3, *xi}), quick());
    CHECK(r.max_witness_level == 0);
    CHECK(r.admissible_levels.empty());
  }

  // edge rho3--sigma1: E-perp = span{xi1} is a product line
  const FaceWitnessReport r31 =
      witnesses_outside_face(test::span_of(d33, {xi1}).complement(), quick());
  CHECK(r31.max_witness_level == 0);
  CHECK(r31.admissible_levels.empty());

  // edge rho_i--sigma_i: E-perp = span{xi3}, exactly 2-entangled
  const FaceWitnessReport rii =
      witnesses_outside_face(test::span_of(d33, {xi3}).complement(), quick());
  CHECK(rii.max_witness_level == 2);
  CHECK(rii.admissible_levels == std::vector<int>{2, 3});
  CHECK(rii.dim_bound_max_level == 2);  // dim E = 8 >= k(6-k) up to k = 2

  // edge rho3--sigma2: E-perp = span{xi2}, exactly 1-entangled
  const FaceWitnessReport r32 =
      witnesses_outside_face(test::span_of(d33, {xi2}).complement(), quick());
  CHECK(r32.max_witness_level == 1);
  CHECK(r32.admissible_levels == std::vector<int>{2});

  CHECK_THROWS_AS(witnesses_outside_face(Subspace(d33, Matrix::Identity(9, 9)), quick()),
                  std::invalid_argument);
}

TEST_CASE("opposite face data") {
  const Vector xi1 = catalog_vector(1).amplitudes();
  const Vector xi3 = catalog_vector(3).amplitudes();
  const OppositeFaceData opp = opposite_face_data(test::span_of(d33, {xi3, xi1}));
  CHECK((opp.proj_state_eperp.matrix() - test::catalog_state(Family::sigma1).matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-13);

  // rho_{E-perp} is the delta-minus boundary state of the rho_E family.
  const BetaThresholds beta = beta_thresholds(opp.proj_state_e, quick());
  CHECK((x_lambda(opp.proj_state_e, beta.delta_minus()).matrix() -
         opp.proj_state_eperp.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("interiority of boundary states matches eigenspace entanglement") {
  const State r1(build({Family::rho1_lambda, d33, 0.8, {}, {}, {}}));
  const ExtremalBoundaryCheck c1 = extremal_boundary_check(r1, 1, quick());
  CHECK_FALSE(c1.interior_minus);
  CHECK_FALSE(c1.entangled_top);
  CHECK(c1.interior_minus == c1.entangled_top);
  CHECK(c1.interior_plus == c1.entangled_bottom);

  const State r2(build({Family::rho2_lambda, d33, 0.8, {}, {}, {}}));
  const ExtremalBoundaryCheck c2 = extremal_boundary_check(r2, 1, quick());
  CHECK(c2.interior_minus);
  CHECK(c2.entangled_top);

  const ExtremalBoundaryCheck cu = extremal_boundary_check(maximally_mixed(d33), 2, quick());
  CHECK(cu.interior_minus == cu.entangled_top);
  CHECK(cu.interior_plus == cu.entangled_bottom);

  for (int trial = 0; trial < 4; ++trial) {
    const State rho = test::random_state(d33, 700 + trial);
    for (int k = 1; k <= 2; ++k) {
      const ExtremalBoundaryCheck c = extremal_boundary_check(rho, k, quick());
      CHECK(c.interior_minus == c.entangled_top);
      CHECK(c.interior_plus == c.entangled_bottom);
    }
  }
}

}  // TEST_SUITE
