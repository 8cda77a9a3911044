#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skw/knorm.hpp"
#include "skw/linalg.hpp"

namespace skw {

// One lambda-grid sample of a k-norm curve: closed form vs optimizer.
struct CurvePoint {
  double lambda = 0.0;
  int k = 0;
  double value_closed_form = 0.0;
  double value_optimizer = 0.0;
  double abs_gap = 0.0;
};

enum class Plane { H1, H2 };  // through rho3, rho_i, rho* for i = 1, 2

// Point on the plane in affine coordinates a rho3 + b rho_i + c rho*
// (a+b+c = 1) plus 2-D drawing coordinates of the isometric embedding with
// rho_i at the origin and rho3 on the positive y axis.
struct PlaneCoord {
  Plane plane = Plane::H1;
  int k = 0;
  int ray_index = 0;
  double a = 0.0, b = 0.0, c = 0.0;
  double x = 0.0, y = 0.0;
};

// Eigenvalues of the 3x3 Gram matrix governing the reshaped range vectors of
// (rho_i^lambda)^{1/2}: a doubly repeated value and a +/- pair.
struct GramSpectrum {
  double mu = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
};

// Family 1 runs along rho1 (alpha1 = overlap with xi1), family 2 along rho2.
GramSpectrum eigvals_family1(double lambda, Complex alpha3, Complex alpha1);
GramSpectrum eigvals_family2(double lambda, Complex alpha3, Complex alpha2);

// Piecewise closed forms of ||rho_family^lambda||_S(k), lambda in [0,1],
// k in {1,2,3}, family in {1,2}.
double closed_form_knorm(int family, double lambda, int k);

// The state (1-lambda) rho3 + lambda rho_family.
State family_state(int family, double lambda);

std::vector<CurvePoint> sweep_family(int family, int k, const std::vector<double>& lambdas,
                                     const SolverConfig& cfg = {});

// Uniform grid helper with both endpoints included.
std::vector<double> uniform_grid(int points);

struct BoundaryCheck {
  bool on_boundary = false;
  std::optional<PureVector> witness_vector;
};

// Decides whether the segment between two k-blockpositive matrices stays on
// the boundary of BP_k: candidates first, then a numeric search for a joint
// zero of both quadratic forms over Schmidt rank <= k vectors.
BoundaryCheck boundary_segment_check(const HermitianOp& w1, const HermitianOp& w2, int k,
                                     const std::vector<PureVector>& candidates,
                                     const SolverConfig& cfg = {});

// Traces the BP_k boundary on the plane by radial bisection from rho*.
std::vector<PlaneCoord> bp_boundary_on_plane(Plane plane, int k, int num_rays,
                                             const SolverConfig& cfg = {});

// CSV / SVG emission (deterministic formatting).
std::string sweep_csv(const std::vector<CurvePoint>& points);
std::string plane_csv(const std::vector<PlaneCoord>& points);
std::string plane_svg(Plane plane, const std::vector<std::vector<PlaneCoord>>& boundaries);

}  // namespace skw
