#pragma once

#include <optional>
#include <vector>

#include "skw/knorm.hpp"
#include "skw/linalg.hpp"

namespace skw {

// Thrown when the one-parameter family through rho degenerates to the
// maximally mixed state and the thresholds are undefined.
struct DegenerateFamilyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Blockpositivity interval endpoints of X_lambda = (1-l) rho* + l rho:
// X_lambda is k-blockpositive iff beta_minus[k] <= lambda <= beta_plus[k].
struct BetaThresholds {
  BipartiteDim dim;
  std::vector<double> beta_minus;  // index k-1, ascending in k, all < 0
  std::vector<double> beta_plus;   // index k-1, descending in k, all >= 1

  double delta_minus() const { return beta_minus.back(); }  // state interval lower end
  double delta_plus() const { return beta_plus.back(); }    // state interval upper end
};

struct WitnessClass {
  int max_bp_level = 0;  // largest k with X k-blockpositive; 0 = none
  bool is_state = false;
  std::optional<int> witnessed_schmidt_number;  // max_bp_level + 1 when a witness
};

// Location of a nonpositive trace-1 Hermitian matrix relative to the state
// body: the segment to rho* crosses the boundary at `crossing`, inside the
// face F_E with E the range of the boundary state.
struct FaceLocation {
  double crossing = 0.0;
  State boundary_state;
  Subspace range_subspace;
  int corank = 0;
};

struct FaceWitnessReport {
  int dim_e = 0;
  int max_witness_level = 0;            // entanglement order of E-perp
  std::vector<int> admissible_levels;   // Schmidt numbers with witnesses outside F_E
  int dim_bound_max_level = 0;          // largest k with dim E >= k(m+n-k)
};

// The four booleans relating interiority of the family's boundary states in
// BP_k to entanglement of the extreme eigenspaces; the two pairs agree for
// every state.
struct ExtremalBoundaryCheck {
  bool interior_minus = false;
  bool interior_plus = false;
  bool entangled_top = false;
  bool entangled_bottom = false;
};

HermitianOp x_lambda(const State& rho, double lambda);

BetaThresholds beta_thresholds(const State& rho, const SolverConfig& cfg = {});

bool is_k_blockpositive(const HermitianOp& x, int k, const SolverConfig& cfg = {},
                        std::span<const PureVector> warm_starts = {});

// Requires trace(X) = 1; other traces are rejected.
WitnessClass classify_witness(const HermitianOp& x, const SolverConfig& cfg = {});

// alpha I - rho with alpha = ||rho||_S(k), scaled to trace 1. Requires
// ||rho||_S(k+1) > ||rho||_S(k), so k = min(m,n) is rejected.
HermitianOp witness_from_state(const State& rho, int k, const SolverConfig& cfg = {});

// Exact pencil crossing of the segment from X (nonpositive, trace 1) to
// rho*; X lies outside the face of the returned range subspace.
FaceLocation face_outside(const HermitianOp& x);

// True iff no vector of Schmidt rank <= k lies in E.
bool is_k_entangled(const Subspace& e, int k, const SolverConfig& cfg = {});

// Largest k with E k-entangled; 0 when E contains a product vector.
int entanglement_order(const Subspace& e, const SolverConfig& cfg = {});

FaceWitnessReport witnesses_outside_face(const Subspace& e, const SolverConfig& cfg = {});

struct OppositeFaceData {
  State proj_state_e;
  State proj_state_eperp;
};
OppositeFaceData opposite_face_data(const Subspace& e);

ExtremalBoundaryCheck extremal_boundary_check(const State& rho, int k,
                                              const SolverConfig& cfg = {});

}  // namespace skw
