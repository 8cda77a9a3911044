#pragma once

#include <string>

#include <json.hpp>

#include "skw/knorm.hpp"
#include "skw/linalg.hpp"
#include "skw/witness.hpp"

namespace skw::io {

using nlohmann::json;

// Matrix files: {"m": int, "n": int, "entries": [[[re, im], ...], ...]},
// row-major mn x mn. Vector files replace "entries" with "amplitudes":
// [[re, im], ...] of length mn. Subspace files carry "vectors", a list of
// such amplitude lists (orthonormalized on load).
json matrix_to_json(const HermitianOp& op);
HermitianOp matrix_from_json(const json& j);

json vector_to_json(const PureVector& v);
PureVector vector_from_json(const json& j);

json subspace_to_json(const Subspace& e);
Subspace subspace_from_json(const json& j);

json knorm_result_to_json(const KNormResult& r);
json beta_thresholds_to_json(const BetaThresholds& b);
json witness_class_to_json(const WitnessClass& w);
json face_location_to_json(const FaceLocation& f);
json face_witness_report_to_json(const FaceWitnessReport& r);

json load_json_file(const std::string& path);

// Writes to a temporary file in the same directory, then renames, so a
// failed run never leaves a partial output file.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace skw::io
