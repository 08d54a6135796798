#include "cosimplex/io.hpp"

#include <fstream>
#include <sstream>

#include "cosimplex/error.hpp"

namespace cosimplex {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const Json& field(const Json& j, const char* key, std::string_view what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing field \"" + key + "\"");
  return j.at(key);
}

int as_int(const Json& j, std::string_view what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + ": expected an integer");
  return j.get<int>();
}

std::size_t as_size(const Json& j, std::string_view what) {
  int v = as_int(j, what);
  if (v < 0) throw InputError(std::string(what) + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

template <class T>
T scalar_from_json(const Json& j, std::string_view what) {
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if constexpr (std::is_same_v<T, double>) return q.get_d();
    else return q;
  }
  if (j.is_number_integer()) return T(j.get<long>());
  if (j.is_number_float()) {
    if constexpr (std::is_same_v<T, double>) return j.get<double>();
    else throw InputError(std::string(what) + ": exact mode needs integers or \"p/q\" strings, got " + j.dump());
  }
  throw InputError(std::string(what) + ": expected a number or \"p/q\" string");
}

template <class T>
Json scalar_to_json(const T& x) {
  if constexpr (std::is_same_v<T, double>) return x;
  else return to_string(x);
}

}  // namespace

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    auto pos = msg.find("parse error");
    throw InputError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                     (pos == std::string::npos ? msg : msg.substr(pos)));
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

TruncatedSCS scs_from_json(const Json& j) {
  const char* what = "scs";
  TruncatedSCS scs(as_int(field(j, "max_level", what), "max_level"));
  if (scs.max_level() < -1) throw InputError("max_level must be >= -1");
  for (const auto& e : field(j, "elements", what)) {
    int id = as_int(field(e, "id", "element"), "element id");
    int lvl = as_int(field(e, "level", "element"), "element level");
    if (lvl < -1 || lvl > scs.max_level())
      throw InputError("element " + std::to_string(id) + ": level " + std::to_string(lvl) + " outside [-1, max_level]");
    std::string name = e.contains("name") ? e.at("name").get<std::string>() : std::string();
    scs.add_element(id, lvl, name);
  }
  if (j.contains("shifts")) {
    for (const auto& s : j.at("shifts")) {
      int i = as_int(field(s, "i", "shift"), "shift index");
      if (i < 0 || i >= scs.max_level())
        throw InputError("shift index " + std::to_string(i) + " outside [0, max_level)");
      for (const auto& pair : field(s, "map", "shift")) {
        if (!pair.is_array() || pair.size() != 2) throw InputError("shift map entries are [from, to] pairs");
        auto from = scs.index_of(as_int(pair[0], "shift source"));
        auto to = scs.index_of(as_int(pair[1], "shift target"));
        if (!from || !to) throw InputError("shift " + std::to_string(i) + " names an unknown element in " + pair.dump());
        scs.set_shift(i, *from, *to);
      }
    }
  }
  return scs;
}

Json scs_to_json(const TruncatedSCS& scs) {
  Json j;
  j["max_level"] = scs.max_level();
  Json elems = Json::array();
  for (std::size_t x = 0; x < scs.size(); ++x) {
    Json e;
    e["id"] = scs.element(x).id;
    if (!scs.element(x).name.empty()) e["name"] = scs.element(x).name;
    e["level"] = scs.level(x);
    elems.push_back(std::move(e));
  }
  j["elements"] = std::move(elems);
  Json shifts = Json::array();
  for (int i = 0; i < scs.max_level(); ++i) {
    Json map = Json::array();
    for (std::size_t x = 0; x < scs.size(); ++x)
      if (auto y = scs.stored(i, x)) map.push_back(Json::array({scs.element(x).id, scs.element(*y).id}));
    if (!map.empty()) shifts.push_back(Json{{"i", i}, {"map", std::move(map)}});
  }
  j["shifts"] = std::move(shifts);
  return j;
}

template <class T>
Matrix<T> matrix_from_json(const Json& j, std::string_view what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": a matrix is an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Matrix<T> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError(std::string(what) + ": ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json<T>(j[r][c], what);
  }
  return m;
}

template <class T>
Json matrix_to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
Json columns_to_json(const Matrix<T>& m) {
  return matrix_to_json(m.transpose());
}

template <class T>
Tower<T> tower_from_json(const Json& j, double tol) {
  const std::size_t amb = as_size(field(j, "ambient_dim", "tower"), "ambient_dim");
  std::vector<Matrix<T>> spans;
  if (j.contains("level_bases")) {
    for (const auto& b : j.at("level_bases")) {
      auto m = matrix_from_json<T>(b, "level basis");
      if (m.rows() == 0) m = Matrix<T>(amb, 0);
      if (m.rows() != amb) throw InputError("level basis rows must equal ambient_dim");
      spans.push_back(std::move(m));
    }
  } else {
    for (const auto& set : field(j, "levels", "tower")) {
      Matrix<T> m(amb, set.size());
      std::size_t c = 0;
      for (const auto& idx : set) {
        auto k = as_size(idx, "level index");
        if (k >= amb) throw InputError("level index " + std::to_string(k) + " outside the ambient");
        m(k, c++) = T(1);
      }
      spans.push_back(std::move(m));
    }
  }
  if (spans.empty()) throw InputError("tower needs at least H_{-1}");
  std::vector<Matrix<T>> shifts;
  if (j.contains("shifts"))
    for (const auto& s : j.at("shifts")) {
      auto m = matrix_from_json<T>(s, "shift");
      if (m.rows() != amb || m.cols() != amb) throw InputError("shift matrices are ambient_dim x ambient_dim");
      shifts.push_back(std::move(m));
    }
  if (shifts.size() + 2 != spans.size())
    throw InputError("tower with " + std::to_string(spans.size()) + " levels needs " +
                     std::to_string(spans.size() >= 2 ? spans.size() - 2 : 0) + " shifts");
  std::optional<Matrix<T>> domain;
  if (j.contains("domain")) domain = matrix_from_json<T>(j.at("domain"), "domain");
  return Tower<T>(amb, std::move(spans), std::move(shifts), std::move(domain), tol);
}

template <class T>
Json tower_to_json(const Tower<T>& t) {
  Json j;
  j["ambient_dim"] = t.ambient_dim();
  Json bases = Json::array();
  for (int k = -1; k <= t.max_level(); ++k) bases.push_back(matrix_to_json(t.level_basis(k)));
  j["level_bases"] = std::move(bases);
  Json shifts = Json::array();
  for (int i = 0; i < t.max_level(); ++i) shifts.push_back(matrix_to_json(t.shift(i)));
  j["shifts"] = std::move(shifts);
  if (!t.domain_is_top()) j["domain"] = matrix_to_json(t.domain());
  return j;
}

bool looks_like_scs(const Json& j) { return j.is_object() && j.contains("elements"); }

template <class T>
Tower<T> tower_from_any(const Json& j, double tol) {
  if (looks_like_scs(j)) return from_scs<T>(scs_from_json(j));
  return tower_from_json<T>(j, tol);
}

template <class T>
SpreadableFamily<T> family_from_json(const Json& j) {
  SpreadableFamily<T> f;
  f.k_dim = as_size(field(j, "k_dim", "family"), "k_dim");
  f.ambient_dim = as_size(field(j, "ambient_dim", "family"), "ambient_dim");
  for (const auto& m : field(j, "isometries", "family")) {
    auto x = matrix_from_json<T>(m, "isometry");
    if (x.rows() != f.ambient_dim || x.cols() != f.k_dim)
      throw InputError("isometries are ambient_dim x k_dim matrices");
    f.isometries.push_back(std::move(x));
  }
  if (f.isometries.empty()) throw InputError("family needs at least one isometry");
  if (j.contains("gram")) {
    f.gram = matrix_from_json<T>(j.at("gram"), "gram");
    if (f.gram.rows() != f.k_dim || f.gram.cols() != f.k_dim) throw InputError("gram is k_dim x k_dim");
  }
  if (j.contains("slot_dim")) {
    f.slot_dim = as_size(j.at("slot_dim"), "slot_dim");
    if (*f.slot_dim == 0 || f.ambient_dim % *f.slot_dim != 0 || f.ambient_dim / *f.slot_dim < 2)
      throw InputError("slot_dim must divide ambient_dim into at least two slots");
  }
  return f;
}

template <class T>
Json family_to_json(const SpreadableFamily<T>& f) {
  Json j;
  j["k_dim"] = f.k_dim;
  j["ambient_dim"] = f.ambient_dim;
  Json isos = Json::array();
  for (const auto& m : f.isometries) isos.push_back(matrix_to_json(m));
  j["isometries"] = std::move(isos);
  if (f.gram.rows()) j["gram"] = matrix_to_json(f.gram);
  if (f.slot_dim) j["slot_dim"] = *f.slot_dim;
  return j;
}

Json report_to_json(const PropertyReport& r) {
  Json j;
  j["all_hold"] = r.all_hold();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["status"] = !c.tested ? "untested" : (c.holds ? "pass" : "fail");
    if (c.residual != 0.0) e["residual"] = c.residual;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["truncation_caveats"] = r.caveats;
  return j;
}

std::string report_to_text(const PropertyReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << (!c.tested ? "SKIP " : (c.holds ? "PASS " : "FAIL ")) << c.name;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  for (const auto& c : r.caveats) os << "caveat: " << c << '\n';
  return os.str();
}

#define COSIMPLEX_IO_INSTANTIATE(T)                                       \
  template Matrix<T> matrix_from_json<T>(const Json&, std::string_view);  \
  template Json matrix_to_json<T>(const Matrix<T>&);                      \
  template Json columns_to_json<T>(const Matrix<T>&);                     \
  template Tower<T> tower_from_json<T>(const Json&, double);              \
  template Json tower_to_json<T>(const Tower<T>&);                        \
  template Tower<T> tower_from_any<T>(const Json&, double);               \
  template SpreadableFamily<T> family_from_json<T>(const Json&);          \
  template Json family_to_json<T>(const SpreadableFamily<T>&);

COSIMPLEX_IO_INSTANTIATE(Rational)
COSIMPLEX_IO_INSTANTIATE(double)

}  // namespace cosimplex
