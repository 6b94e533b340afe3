#pragma once

#include <hiso/certificate.hpp>
#include <hiso/isometry.hpp>

#include <json.hpp>

#include <string>

namespace hiso {

/// Insertion-ordered JSON keeps report bytes deterministic.
using Json = nlohmann::ordered_json;

/// {"num_vars": n, "order": K, "coeffs": [{"index": [...], "re": x, "im": y}, ...]},
/// indices in graded-lex order, coefficients below eps_zero omitted.
Json jet_to_json(const JetSeries& s, double eps_zero = 1e-13);
JetSeries jet_from_json(const Json& j);

/// {"source": spec, "target": spec, "k": ..., "weights": {...}, "jets": [...],
///  "closed_form": tag?}. The weights object mirrors the factor weights and
/// wins over any @weights embedded in the spec strings on load.
Json map_to_json(const IsometryMap& f, double eps_zero = 1e-13);
IsometryMap map_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);

Json matrix_to_json(const MatrixXcd& m);
MatrixXcd matrix_from_json(const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Canonical rendering: two-space indent, newline-terminated.
std::string dump_json(const Json& j);

} // namespace hiso
