#include "skw/families.hpp"

#include <cmath>
#include <unordered_map>

namespace skw {

namespace {

Matrix outer(const Vector& v) { return v * v.adjoint(); }

void require_biqutrit(const FamilySpec& spec, const char* what) {
  if (!(spec.dim == BipartiteDim(3, 3)))
    throw std::invalid_argument(std::string(what) + " is defined on the 3x3 system");
}

double require_lambda(const FamilySpec& spec) {
  if (!spec.lambda) throw std::invalid_argument("family requires a lambda parameter");
  return *spec.lambda;
}

Vector max_entangled_vector(const BipartiteDim& dim) {
  if (dim.m != dim.n)
    throw std::invalid_argument("max_entangled is defined on n (x) n systems");
  Vector v = Vector::Zero(dim.mn());
  for (int i = 0; i < dim.n; ++i) v(i * dim.n + i) = 1.0 / std::sqrt(double(dim.n));
  return v;
}

Matrix mix_with_uniform(const BipartiteDim& dim, const Matrix& rho, double lambda) {
  return (1.0 - lambda) / double(dim.mn()) * Matrix::Identity(dim.mn(), dim.mn()) +
         lambda * rho;
}

Matrix catalog_projector(int index) {
  const BipartiteDim d33(3, 3);
  return outer(catalog_vector(index).amplitudes());
}

// omega_{i,k} = X_{beta_k^-} on the line through rho_i, assembled from the
// exact rational beta: -1/(3k-1) for i = 3, -2/7 for (i,k) = (2,1).
Matrix omega_point(const FamilySpec& spec) {
  if (!spec.k || !spec.i) throw std::invalid_argument("omega requires --i and --k");
  const int i = *spec.i, k = *spec.k;
  double beta = 0.0;
  if (i == 3 && k >= 1 && k <= 3) {
    beta = -1.0 / double(3 * k - 1);
  } else if (i == 2 && k == 1) {
    beta = -2.0 / 7.0;
  } else {
    throw std::invalid_argument("omega points: i=3 with k=1..3, or i=2 with k=1");
  }
  return mix_with_uniform(BipartiteDim(3, 3), catalog_projector(i), beta);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::max_entangled: return "max-entangled";
    case Family::antisymmetric: return "antisym";
    case Family::projection: return "projection";
    case Family::rho1: return "rho1";
    case Family::rho2: return "rho2";
    case Family::rho3: return "rho3";
    case Family::rho1_lambda: return "rho1-lambda";
    case Family::rho2_lambda: return "rho2-lambda";
    case Family::sigma1: return "sigma1";
    case Family::sigma2: return "sigma2";
    case Family::omega: return "omega";
    case Family::isotropic: return "isotropic";
    case Family::werner: return "werner";
    case Family::uniform: return "uniform";
  }
  return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
  static const std::unordered_map<std::string, Family> table = {
      {"max-entangled", Family::max_entangled},
      {"antisym", Family::antisymmetric},
      {"antisymmetric", Family::antisymmetric},
      {"projection", Family::projection},
      {"rho1", Family::rho1},
      {"rho2", Family::rho2},
      {"rho3", Family::rho3},
      {"rho1-lambda", Family::rho1_lambda},
      {"rho2-lambda", Family::rho2_lambda},
      {"sigma1", Family::sigma1},
      {"sigma2", Family::sigma2},
      {"omega", Family::omega},
      {"isotropic", Family::isotropic},
      {"werner", Family::werner},
      {"uniform", Family::uniform},
      {"rho-star", Family::uniform},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

PureVector antisymmetric_unit(const BipartiteDim& dim, int i, int j) {
  if (j < 0 || i <= j || i >= dim.min_dim())
    throw std::invalid_argument("antisymmetric_unit: need 0 <= j < i < min(m,n)");
  Vector v = Vector::Zero(dim.mn());
  v(i * dim.n + j) = 1.0 / std::sqrt(2.0);
  v(j * dim.n + i) = -1.0 / std::sqrt(2.0);
  return PureVector(dim, std::move(v));
}

PureVector catalog_vector(int index) {
  const BipartiteDim d(3, 3);
  Vector v = Vector::Zero(9);
  switch (index) {
    case 1:
      v(0 * 3 + 1) = 1.0;
      break;
    case 2:
      v(0 * 3 + 1) = 1.0 / std::sqrt(2.0);
      v(1 * 3 + 0) = 1.0 / std::sqrt(2.0);
      break;
    case 3:
      for (int i = 0; i < 3; ++i) v(i * 3 + i) = 1.0 / std::sqrt(3.0);
      break;
    default:
      throw std::invalid_argument("catalog_vector: index must be 1, 2 or 3");
  }
  return PureVector(d, std::move(v));
}

HermitianOp build(const FamilySpec& spec) {
  const BipartiteDim& dim = spec.dim;
  switch (spec.family) {
    case Family::max_entangled:
      return HermitianOp(dim, outer(max_entangled_vector(dim)));

    case Family::antisymmetric: {
      if (dim.m != dim.n)
        throw std::invalid_argument("antisymmetric is defined on n (x) n systems");
      const int n = dim.n;
      Matrix rho = Matrix::Zero(dim.mn(), dim.mn());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
          rho += outer(antisymmetric_unit(dim, i, j).amplitudes());
      rho *= 2.0 / double(n * (n - 1));
      return HermitianOp(dim, std::move(rho));
    }

    case Family::projection: {
      if (!spec.basis) throw std::invalid_argument("projection family requires a subspace");
      return projection_state(*spec.basis);
    }

    case Family::rho1:
    case Family::rho2:
    case Family::rho3: {
      require_biqutrit(spec, "rho_i");
      const int idx = spec.family == Family::rho1 ? 1 : spec.family == Family::rho2 ? 2 : 3;
      return HermitianOp(dim, catalog_projector(idx));
    }

    case Family::rho1_lambda:
    case Family::rho2_lambda: {
      require_biqutrit(spec, "rho_i^lambda");
      const double l = require_lambda(spec);
      if (l < 0.0 || l > 1.0)
        throw std::invalid_argument("rho_i^lambda requires lambda in [0,1]");
      const int idx = spec.family == Family::rho1_lambda ? 1 : 2;
      return HermitianOp(dim, (1.0 - l) * catalog_projector(3) + l * catalog_projector(idx));
    }

    case Family::sigma1:
    case Family::sigma2: {
      require_biqutrit(spec, "sigma_i");
      const int idx = spec.family == Family::sigma1 ? 1 : 2;
      Matrix s = (Matrix::Identity(9, 9) - catalog_projector(3) - catalog_projector(idx)) / 7.0;
      return HermitianOp(dim, std::move(s));
    }

    case Family::omega:
      require_biqutrit(spec, "omega");
      return HermitianOp(dim, omega_point(spec));

    case Family::isotropic:
      return HermitianOp(
          dim, mix_with_uniform(dim, outer(max_entangled_vector(dim)), require_lambda(spec)));

    case Family::werner:
      return partial_transpose(HermitianOp(
          dim, mix_with_uniform(dim, outer(max_entangled_vector(dim)), require_lambda(spec))));

    case Family::uniform:
      return maximally_mixed(dim);
  }
  throw std::invalid_argument("build: unknown family");
}

HermitianOp tomiyama_point(int n, int k) {
  if (n < 2) throw std::invalid_argument("tomiyama_point: n >= 2");
  if (k < 1 || k > n) throw std::invalid_argument("tomiyama_point: k in [1, n]");
  const BipartiteDim dim(n, n);
  const double beta = -1.0 / double(n * k - 1);
  return HermitianOp(dim, mix_with_uniform(dim, outer(max_entangled_vector(dim)), beta));
}

}  // namespace skw
