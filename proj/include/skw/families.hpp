#pragma once

#include <optional>
#include <string>

#include "skw/linalg.hpp"

namespace skw {

// Named states and witness points from the biqutrit catalog plus the
// standard n (x) n families.
enum class Family {
  max_entangled,   // |Omega><Omega|, Omega = (1/sqrt n) sum |ii>
  antisymmetric,   // projection state onto the antisymmetric space
  projection,      // P_E / dim E for a supplied subspace
  rho1,            // |01><01| in 3 (x) 3
  rho2,            // |xi2><xi2|, xi2 = (|01>+|10>)/sqrt 2
  rho3,            // |xi3><xi3|, xi3 = (|00>+|11>+|22>)/sqrt 3
  rho1_lambda,     // (1-l) rho3 + l rho1
  rho2_lambda,     // (1-l) rho3 + l rho2
  sigma1,          // (1/7)(9 rho* - rho3 - rho1)
  sigma2,          // (1/7)(9 rho* - rho3 - rho2)
  omega,           // boundary point of BP_k on the rho_i line, i in {2,3}
  isotropic,       // (1-l) rho* + l max_entangled
  werner,          // partial transpose of isotropic
  uniform,         // maximally mixed rho*
};

struct FamilySpec {
  Family family;
  BipartiteDim dim;
  std::optional<double> lambda;     // required by the lambda-parametrized families
  std::optional<int> k;             // level for omega points
  std::optional<int> i;             // line index for omega points (2 or 3)
  std::optional<Subspace> basis;    // required by Family::projection

  static FamilySpec simple(Family f, BipartiteDim d) { return {f, d, {}, {}, {}, {}}; }
};

// Family enum <-> kebab-case CLI names ("max-entangled", "rho1-lambda", ...).
std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

// Constructs the family member. All outputs are Hermitian with trace 1;
// convert with State(...) where positivity is expected.
HermitianOp build(const FamilySpec& spec);

// (1/sqrt 2)(|ij> - |ji>) for i > j.
PureVector antisymmetric_unit(const BipartiteDim& dim, int i, int j);

// The catalog vectors xi1 = |01>, xi2, xi3 in 3 (x) 3.
PureVector catalog_vector(int index);

// X_lambda of the maximally entangled state at lambda = -1/(nk-1), the
// boundary point of BP_k on the isotropic line.
HermitianOp tomiyama_point(int n, int k);

}  // namespace skw
