#include "skw/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace skw::io {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("expected complex entry [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

BipartiteDim dim_from_json(const json& j) {
  if (!j.contains("m") || !j.contains("n") || !j["m"].is_number_integer() ||
      !j["n"].is_number_integer())
    throw std::invalid_argument("expected integer fields m and n");
  return BipartiteDim(j["m"].get<int>(), j["n"].get<int>());
}

Vector amplitudes_from_json(const json& j, int expected) {
  if (!j.is_array() || static_cast<int>(j.size()) != expected)
    throw std::invalid_argument("amplitude list must have length m*n");
  Vector v(expected);
  for (int i = 0; i < expected; ++i) v(i) = complex_from_json(j[i]);
  return v;
}

}  // namespace

json matrix_to_json(const HermitianOp& op) {
  const int d = op.dim().mn();
  json rows = json::array();
  for (int i = 0; i < d; ++i) {
    json row = json::array();
    for (int j = 0; j < d; ++j) row.push_back(complex_to_json(op.matrix()(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"m", op.dim().m}, {"n", op.dim().n}, {"entries", std::move(rows)}};
}

HermitianOp matrix_from_json(const json& j) {
  const BipartiteDim dim = dim_from_json(j);
  const int d = dim.mn();
  if (!j.contains("entries") || !j["entries"].is_array() ||
      static_cast<int>(j["entries"].size()) != d)
    throw std::invalid_argument("entries must be an mn x mn array");
  Matrix m(d, d);
  for (int r = 0; r < d; ++r) {
    const json& row = j["entries"][r];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw std::invalid_argument("entries must be an mn x mn array");
    for (int c = 0; c < d; ++c) m(r, c) = complex_from_json(row[c]);
  }
  return HermitianOp(dim, std::move(m));
}

json vector_to_json(const PureVector& v) {
  json amps = json::array();
  for (int i = 0; i < v.amplitudes().size(); ++i)
    amps.push_back(complex_to_json(v.amplitudes()(i)));
  return json{{"m", v.dim().m}, {"n", v.dim().n}, {"amplitudes", std::move(amps)}};
}

PureVector vector_from_json(const json& j) {
  const BipartiteDim dim = dim_from_json(j);
  if (!j.contains("amplitudes")) throw std::invalid_argument("missing amplitudes");
  return PureVector(dim, amplitudes_from_json(j["amplitudes"], dim.mn()));
}

json subspace_to_json(const Subspace& e) {
  json vectors = json::array();
  for (int c = 0; c < e.dimension(); ++c) {
    json amps = json::array();
    for (int i = 0; i < e.basis().rows(); ++i)
      amps.push_back(complex_to_json(e.basis()(i, c)));
    vectors.push_back(std::move(amps));
  }
  return json{{"m", e.ambient().m}, {"n", e.ambient().n}, {"vectors", std::move(vectors)}};
}

Subspace subspace_from_json(const json& j) {
  const BipartiteDim dim = dim_from_json(j);
  if (!j.contains("vectors") || !j["vectors"].is_array() || j["vectors"].empty())
    throw std::invalid_argument("missing spanning vectors");
  Matrix span(dim.mn(), j["vectors"].size());
  for (std::size_t c = 0; c < j["vectors"].size(); ++c)
    span.col(c) = amplitudes_from_json(j["vectors"][c], dim.mn());
  return Subspace::from_span(dim, span);
}

json knorm_result_to_json(const KNormResult& r) {
  return json{{"value", r.value},
              {"k", r.k},
              {"method", method_name(r.method)},
              {"restarts_used", r.restarts_used},
              {"converged", r.converged},
              {"certificate", vector_to_json(r.certificate)}};
}

json beta_thresholds_to_json(const BetaThresholds& b) {
  return json{{"m", b.dim.m},
              {"n", b.dim.n},
              {"beta_minus", b.beta_minus},
              {"beta_plus", b.beta_plus},
              {"delta_minus", b.delta_minus()},
              {"delta_plus", b.delta_plus()}};
}

json witness_class_to_json(const WitnessClass& w) {
  json j{{"max_bp_level", w.max_bp_level}, {"is_state", w.is_state}};
  if (w.witnessed_schmidt_number) j["witnessed_schmidt_number"] = *w.witnessed_schmidt_number;
  return j;
}

json face_location_to_json(const FaceLocation& f) {
  return json{{"crossing", f.crossing},
              {"corank", f.corank},
              {"range_dim", f.range_subspace.dimension()},
              {"range_subspace", subspace_to_json(f.range_subspace)},
              {"boundary_state", matrix_to_json(f.boundary_state)}};
}

json face_witness_report_to_json(const FaceWitnessReport& r) {
  return json{{"dim_e", r.dim_e},
              {"max_witness_level", r.max_witness_level},
              {"admissible_levels", r.admissible_levels},
              {"dim_bound_max_level", r.dim_bound_max_level}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

}  // namespace skw::io
