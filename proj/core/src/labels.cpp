#include "cosimplex/labels.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cosimplex/error.hpp"

namespace cosimplex {

Label Label::from_support(std::vector<int> support) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0) throw PreconditionError("label support must be non-negative");
    if (i > 0 && support[i] <= support[i - 1])
      throw PreconditionError("label support must be strictly increasing");
  }
  Label l;
  l.support_ = std::move(support);
  return l;
}

Label Label::parse(std::string_view bits) {
  if (bits == "0") return Label();
  if (bits.empty() || bits.back() != '1')
    throw InputError("label must be \"0\" or a bit string ending in 1: \"" + std::string(bits) + "\"");
  std::vector<int> s;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') s.push_back(static_cast<int>(i));
    else if (bits[i] != '0') throw InputError("label has a non-binary digit: \"" + std::string(bits) + "\"");
  }
  return from_support(std::move(s));
}

Label Label::root(int rank) {
  std::vector<int> s(static_cast<std::size_t>(std::max(rank, 0)));
  for (int i = 0; i < rank; ++i) s[static_cast<std::size_t>(i)] = i;
  return from_support(std::move(s));
}

bool Label::bit(int n) const { return std::binary_search(support_.begin(), support_.end(), n); }

std::string Label::to_string() const {
  if (support_.empty()) return "0";
  std::string s(static_cast<std::size_t>(level() + 1), '0');
  for (int v : support_) s[static_cast<std::size_t>(v)] = '1';
  return s;
}

std::strong_ordering Label::operator<=>(const Label& other) const {
  if (auto c = level() <=> other.level(); c != 0) return c;
  for (int n = 0; n <= level(); ++n) {
    bool a = bit(n), b = other.bit(n);
    if (a != b) return a ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

UpsilonTuple to_upsilon(const Label& chi) {
  const auto& s = chi.support();
  UpsilonTuple t(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) t[i] = i == 0 ? s[0] : s[i] - s[i - 1] - 1;
  return t;
}

Label from_upsilon(const UpsilonTuple& t) {
  std::vector<int> s(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0) throw PreconditionError("upsilon coordinates must be non-negative");
    s[i] = i == 0 ? t[0] : s[i - 1] + t[i] + 1;
  }
  return Label::from_support(std::move(s));
}

Label insert_zero(const Label& chi, int i) {
  if (i < 0) throw PreconditionError("insert_zero: negative position");
  std::vector<int> s = chi.support();
  for (int& v : s)
    if (v >= i) ++v;
  return Label::from_support(std::move(s));
}

Label root_of(const Label& chi) { return Label::root(chi.rank()); }

Label transpose_action(const Label& chi, int j) {
  if (j < 1) throw PreconditionError("transpose_action: index must be >= 1");
  bool a = chi.bit(j - 1), b = chi.bit(j);
  if (a == b) return chi;
  std::vector<int> s;
  for (int v : chi.support()) {
    if (v == j - 1) s.push_back(j);
    else if (v == j) s.push_back(j - 1);
    else s.push_back(v);
  }
  std::sort(s.begin(), s.end());
  return Label::from_support(std::move(s));
}

bool is_morphism(const Label& source, const Label& target) {
  if (source.rank() != target.rank()) return false;
  int prev = 0;
  for (std::size_t i = 0; i < source.support().size(); ++i) {
    int off = target.support()[i] - source.support()[i];
    if (off < prev) return false;
    prev = off;
  }
  return true;
}

Label join(const Label& a, const Label& b) {
  if (a.rank() != b.rank()) throw PreconditionError("join: labels of different rank");
  auto ta = to_upsilon(a), tb = to_upsilon(b);
  for (std::size_t i = 0; i < ta.size(); ++i) ta[i] = std::max(ta[i], tb[i]);
  return from_upsilon(ta);
}

std::optional<std::vector<int>> push_word(const Label& source, const Label& target) {
  if (!is_morphism(source, target)) return std::nullopt;
  auto ts = to_upsilon(source), tt = to_upsilon(target);
  std::vector<int> word;
  Label cur = source;
  // Highest coordinate first keeps the lower support positions fixed.
  for (std::size_t r = ts.size(); r-- > 0;) {
    for (int step = ts[r]; step < tt[r]; ++step) {
      int pos = cur.support()[r];
      word.push_back(pos);
      cur = insert_zero(cur, pos);
    }
  }
  return word;
}

std::vector<Label> enumerate_labels(int max_level, std::optional<int> rank) {
  std::vector<Label> out;
  if (max_level < -1) return out;
  if (!rank || *rank == 0) out.push_back(Label());
  for (int lev = 0; lev <= max_level; ++lev) {
    const unsigned long long count = 1ULL << lev;
    for (unsigned long long v = 0; v < count; ++v) {
      std::vector<int> s;
      for (int j = 0; j < lev; ++j)
        if ((v >> (lev - 1 - j)) & 1ULL) s.push_back(j);
      s.push_back(lev);
      if (rank && static_cast<int>(s.size()) != *rank) continue;
      out.push_back(Label::from_support(std::move(s)));
    }
  }
  return out;
}

std::vector<SkeletonEdge> skeleton_edges(int max_rank, int max_level) {
  std::vector<SkeletonEdge> edges;
  for (const auto& chi : enumerate_labels(max_level)) {
    if (chi.rank() > max_rank || chi.rank() == 0) continue;
    auto t = to_upsilon(chi);
    for (std::size_t r = 0; r < t.size(); ++r) {
      auto u = t;
      ++u[r];
      Label target = from_upsilon(u);
      if (target.level() > max_level) continue;
      edges.push_back({chi, target, static_cast<int>(r) + 1});
    }
  }
  return edges;
}

namespace {

const char* coordinate_colour(int coordinate) {
  switch (coordinate) {
    case 1: return "blue";
    case 2: return "red";
    case 3: return "darkgreen";
    case 4: return "orange";
    default: return "black";
  }
}

}  // namespace

std::string skeleton_dot(int max_rank, int max_level) {
  std::ostringstream os;
  os << "digraph skeleton {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=plaintext, fontname=\"Helvetica\"];\n";
  std::map<int, std::vector<Label>> by_level;
  for (const auto& chi : enumerate_labels(max_level))
    if (chi.rank() <= max_rank) by_level[chi.level()].push_back(chi);
  for (const auto& [lev, labels] : by_level) {
    os << "  { rank=same;";
    for (const auto& chi : labels) os << " \"" << chi.to_string() << "\";";
    os << " }\n";
  }
  for (const auto& [lev, labels] : by_level)
    for (const auto& chi : labels) {
      os << "  \"" << chi.to_string() << "\" [label=\"(" << chi.to_string() << ")\"";
      if (chi.is_root()) os << ", fontname=\"Helvetica-Bold\"";
      os << "];\n";
    }
  for (const auto& e : skeleton_edges(max_rank, max_level))
    os << "  \"" << e.source.to_string() << "\" -> \"" << e.target.to_string() << "\" [color="
       << coordinate_colour(e.coordinate) << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace cosimplex
