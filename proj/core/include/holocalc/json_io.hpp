#pragma once

#include <json.hpp>

#include "holocalc/contour.hpp"
#include "holocalc/matrix.hpp"
#include "holocalc/renorm.hpp"
#include "holocalc/seminorm.hpp"

namespace holocalc {

using Json = nlohmann::json;

// Wire schemas. Operators travel as separate real/imaginary arrays:
//   operator:    { "dim": n, "re": [[..]], "im": [[..]] }   ("im" may be absent)
//   calibration: { "dim": n, "seminorms": [ { "kind": "weighted_sup",
//                                             "weights": [w1..wn] }, ... ] }
//   domain:      { "disks": [ { "c": [re, im], "r": radius }, ... ] }
//   contour:     { "circles": [ { "c": [re, im], "r": .., "orient": 1,
//                                 "nodes": 128 } ], "separation": .. }
// Parse errors throw JsonError.

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json calibration_to_json(const Calibration& p);
Calibration calibration_from_json(const Json& j);

Json domain_to_json(const Domain& d);
Domain domain_from_json(const Json& j);

Json contour_to_json(const Contour& gamma);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json cvector_to_json(const Vector& v);
Vector cvector_from_json(const Json& j);

/// Renormed calibrations serialize as parameters (mode, mu, depth,
/// per-member constants), not as evaluatable seminorms.
Json renormed_to_json(const RenormedCalibration& r);

Json load_json_file(const std::string& path);

}  // namespace holocalc
