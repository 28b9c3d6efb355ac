#pragma once

#include <json.hpp>

#include "ovmf/lvalue.hpp"

namespace ovmf {

using nlohmann::json;

// Scalars serialize as {"v": int | "inf", "u": decimal-string, "N": int};
// the prime is carried by the enclosing context.  An apparent zero keeps its
// absolute precision in "v" with "u" = "0".
json to_json(const PadicScalar& x);
PadicScalar scalar_from_json(const json& j, long p);

json to_json(const FamilyElement& x);
FamilyElement family_from_json(const json& j, long p);

// {"tame": int, "u": [scalar...], "p": int, "N": int, "M": int}
json to_json(const Weight& k, int M);
Weight weight_from_json(const json& j);

// {"Q": int, "coeffs": [[scalar...]...]}
json to_json(const QExp& f);
QExp qexp_from_json(const json& j, long p, int N, int M);

// {"weight": Weight, "degree": int, "comps": [QExp...]}
json to_json(const NearlyExp& w, int M);
NearlyExp nearly_from_json(const json& j);

// {"rows": int, "cols": int, "entries": [scalar...], "blocks": [int...]?}
json to_json(const PMatrix& m);
PMatrix matrix_from_json(const json& j, long p, int N);

// {"coeffs": [scalar...]}
json to_json(const PadicPoly& P);
PadicPoly poly_from_json(const json& j, long p, int N);

}  // namespace ovmf
