#include <iostream>
#include <sstream>

#include "cli.hpp"

namespace cosimplex::cli {

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (!is_scalar(x) && !(x.is_array() && std::all_of(x.begin(), x.end(), is_scalar))) return false;
  return true;
}

std::string scalar_text(const Json& j) {
  return j.is_string() && !j.get<std::string>().empty() ? j.get<std::string>() : j.dump();
}

void write(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_scalar(v)) {
        os << pad << k << ": " << scalar_text(v) << '\n';
      } else if (is_flat_array(v)) {
        os << pad << k << ": " << v.dump() << '\n';
      } else {
        os << pad << k << ":\n";
        write(os, v, depth + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_scalar(v) || is_flat_array(v)) {
        os << pad << "- " << (is_scalar(v) ? scalar_text(v) : v.dump()) << '\n';
      } else {
        os << pad << "-\n";
        write(os, v, depth + 1);
      }
    }
  } else {
    os << pad << scalar_text(j) << '\n';
  }
}

}  // namespace

std::string json_to_text(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  return os.str();
}

void emit(const Options& opt, const Json& j) {
  if (opt.format == Format::Text) std::cout << json_to_text(j);
  else std::cout << j.dump(2) << '\n';
}

void emit_text(const std::string& s) { std::cout << s; }

}  // namespace cosimplex::cli
