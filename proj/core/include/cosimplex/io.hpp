#pragma once

// JSON encodings of the library's inputs and reports.
//
// Matrices are arrays of rows. Exact entries are written as "p/q" strings; on input an entry
// may be an integer, a "p/q" string, or (in float mode only) a JSON number.

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

#include "cosimplex/report.hpp"
#include "cosimplex/scs.hpp"
#include "cosimplex/spread.hpp"
#include "cosimplex/tower.hpp"

namespace cosimplex {

using Json = nlohmann::ordered_json;

// Throws InputError carrying line and column on malformed text.
Json parse_json(std::string_view text, std::string_view source = "<input>");
Json read_json_file(const std::string& path);

TruncatedSCS scs_from_json(const Json& j);
Json scs_to_json(const TruncatedSCS& scs);

template <class T>
Matrix<T> matrix_from_json(const Json& j, std::string_view what);
template <class T>
Json matrix_to_json(const Matrix<T>& m);
// Column list: one array per ambient column vector.
template <class T>
Json columns_to_json(const Matrix<T>& m);

// {"ambient_dim", "levels": [index sets for k = -1..N] or "level_bases": [matrix...],
//  "shifts": [matrix...], "domain"?: matrix}. Index sets name ambient coordinates.
template <class T>
Tower<T> tower_from_json(const Json& j, double tol = kDefaultTolerance);
template <class T>
Json tower_to_json(const Tower<T>& t);

// A tower file or an SCS file (detected by "elements").
bool looks_like_scs(const Json& j);
template <class T>
Tower<T> tower_from_any(const Json& j, double tol = kDefaultTolerance);

// {"k_dim", "ambient_dim", "isometries": [matrix...], "gram"?: matrix, "slot_dim"?: int}
template <class T>
SpreadableFamily<T> family_from_json(const Json& j);
template <class T>
Json family_to_json(const SpreadableFamily<T>& f);

// {"all_hold", "checks": [...], "truncation_caveats": [...]}
Json report_to_json(const PropertyReport& r);
// One line per check: PASS/FAIL/SKIP name (detail).
std::string report_to_text(const PropertyReport& r);

}  // namespace cosimplex
