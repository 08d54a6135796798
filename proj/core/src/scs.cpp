#include "cosimplex/scs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cosimplex/error.hpp"

namespace cosimplex {

TruncatedSCS::TruncatedSCS(int max_level) : max_level_(max_level) {
  if (max_level < -1) throw PreconditionError("truncation level must be >= -1");
  shifts_.resize(static_cast<std::size_t>(std::max(max_level, 0)));
}

std::size_t TruncatedSCS::add_element(int id, int level, std::string name) {
  if (index_of(id)) throw InputError("duplicate element id " + std::to_string(id));
  elements_.push_back({id, std::move(name), level});
  for (auto& row : shifts_) row.emplace_back();
  return elements_.size() - 1;
}

void TruncatedSCS::set_shift(int i, std::size_t from, std::size_t to) {
  if (i < 0 || i >= max_level_) throw PreconditionError("shift index outside [0, N-1]");
  shifts_[static_cast<std::size_t>(i)][from] = to;
}

void TruncatedSCS::clear_shift(int i, std::size_t from) {
  if (i < 0 || i >= max_level_) return;
  shifts_[static_cast<std::size_t>(i)][from].reset();
}

std::string TruncatedSCS::display(std::size_t x) const {
  const auto& e = elements_[x];
  return e.name.empty() ? std::to_string(e.id) : e.name;
}

std::optional<std::size_t> TruncatedSCS::index_of(int id) const {
  for (std::size_t x = 0; x < elements_.size(); ++x)
    if (elements_[x].id == id) return x;
  return std::nullopt;
}

std::optional<std::size_t> TruncatedSCS::stored(int i, std::size_t x) const {
  if (i < 0 || i >= max_level_) return std::nullopt;
  return shifts_[static_cast<std::size_t>(i)][x];
}

std::optional<std::size_t> TruncatedSCS::apply(int i, std::size_t x) const {
  if (i < 0) return std::nullopt;
  if (auto s = stored(i, x)) return s;
  if (i >= level(x) + 1) return x;
  return std::nullopt;
}

std::optional<std::size_t> TruncatedSCS::apply_word(const std::vector<int>& word, std::size_t x) const {
  std::optional<std::size_t> cur = x;
  for (int i : word) {
    cur = apply(i, *cur);
    if (!cur) return std::nullopt;
  }
  return cur;
}

std::vector<std::size_t> TruncatedSCS::up_to_level(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(); ++x)
    if (level(x) <= k) out.push_back(x);
  return out;
}

std::vector<std::size_t> TruncatedSCS::innovation(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(); ++x)
    if (level(x) == k) out.push_back(x);
  return out;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Tower: return "tower";
    case ViolationKind::Domain: return "domain";
    case ViolationKind::Adaptedness: return "adaptedness";
    case ViolationKind::FixedPoint: return "fixed-point";
    case ViolationKind::Injectivity: return "injectivity";
    case ViolationKind::Cosimplicial: return "cosimplicial";
  }
  return "unknown";
}

ValidationReport validate(const TruncatedSCS& scs) {
  ValidationReport rep;
  const int N = scs.max_level();
  auto add = [&](ViolationKind k, std::string d) { rep.violations.push_back({k, std::move(d)}); };
  auto name = [&](std::size_t x) { return scs.display(x); };

  for (std::size_t x = 0; x < scs.size(); ++x) {
    int lv = scs.level(x);
    if (lv < -1 || lv > N)
      add(ViolationKind::Tower, "element " + name(x) + " has level " + std::to_string(lv) + " outside [-1, " +
                                    std::to_string(N) + "]");
  }
  for (std::size_t x = 0; x < scs.size(); ++x) {
    int lv = scs.level(x);
    for (int i = 0; i < N; ++i) {
      auto y = scs.stored(i, x);
      if (lv >= N) {
        if (y) add(ViolationKind::Domain, "alpha_" + std::to_string(i) + " given on top-level element " + name(x));
        continue;
      }
      if (!y) {
        if (i <= lv)
          add(ViolationKind::Domain, "alpha_" + std::to_string(i) + " undefined on element " + name(x));
        continue;
      }
      if (i >= lv + 1 && *y != x)
        add(ViolationKind::FixedPoint, "alpha_" + std::to_string(i) + "(" + name(x) + ") = " + name(*y) +
                                           " but lvl(" + name(x) + ") = " + std::to_string(lv));
      if (scs.level(*y) > lv + 1)
        add(ViolationKind::Adaptedness, "lvl(alpha_" + std::to_string(i) + "(" + name(x) + ")) = " +
                                            std::to_string(scs.level(*y)) + " > " + std::to_string(lv + 1));
    }
  }
  for (int i = 0; i < N; ++i) {
    std::map<std::size_t, std::size_t> preimage;
    for (std::size_t x = 0; x < scs.size(); ++x) {
      if (scs.level(x) > N - 1) continue;
      auto y = scs.apply(i, x);
      if (!y) continue;
      auto [it, fresh] = preimage.emplace(*y, x);
      if (!fresh)
        add(ViolationKind::Injectivity, "alpha_" + std::to_string(i) + " maps " + name(it->second) + " and " +
                                            name(x) + " to " + name(*y));
    }
  }
  for (std::size_t x = 0; x < scs.size(); ++x) {
    if (scs.level(x) > N - 2) continue;
    for (int j = 1; j <= N; ++j)
      for (int i = 0; i < j; ++i) {
        auto ai = scs.apply(i, x);
        auto aj1 = scs.apply(j - 1, x);
        if (!ai || !aj1) continue;
        auto lhs = scs.apply(j, *ai);
        auto rhs = scs.apply(i, *aj1);
        if (lhs && rhs && *lhs != *rhs)
          add(ViolationKind::Cosimplicial, "alpha_" + std::to_string(j) + " alpha_" + std::to_string(i) + "(" +
                                               name(x) + ") = " + name(*lhs) + " but alpha_" + std::to_string(i) +
                                               " alpha_" + std::to_string(j - 1) + "(" + name(x) + ") = " +
                                               name(*rhs));
      }
  }
  rep.valid = rep.violations.empty();
  return rep;
}

std::optional<int> first_ell_violation(const std::vector<int>& ell, int max_level) {
  for (int n = 0; n <= max_level && n < static_cast<int>(ell.size()); ++n) {
    int v = ell[static_cast<std::size_t>(n)];
    if (v < n) return n;
    if (n > 0 && v > ell[static_cast<std::size_t>(n - 1)] + 1) return n;
  }
  return std::nullopt;
}

TruncatedSCS from_ell(std::vector<int> ell, int max_level) {
  if (max_level < 0) throw PreconditionError("ell-family needs N >= 0");
  if (ell.empty()) throw PreconditionError("ell-family needs ell(0)");
  while (static_cast<int>(ell.size()) <= max_level) ell.push_back(static_cast<int>(ell.size()));
  if (auto bad = first_ell_violation(ell, max_level))
    throw PreconditionError("ell violates n <= ell(n) <= ell(n-1) + 1 at index " + std::to_string(*bad));
  TruncatedSCS s(max_level);
  std::vector<std::optional<std::size_t>> idx(static_cast<std::size_t>(max_level) + 2);
  for (int n = 0; n <= max_level; ++n)
    if (ell[static_cast<std::size_t>(n)] <= max_level)
      idx[static_cast<std::size_t>(n)] = s.add_element(n, ell[static_cast<std::size_t>(n)]);
  for (int n = 0; n <= max_level; ++n) {
    auto x = idx[static_cast<std::size_t>(n)];
    if (!x || s.level(*x) > max_level - 1) continue;
    for (int i = 0; i < max_level; ++i) {
      int t = i <= n ? n + 1 : n;
      s.set_shift(i, *x, *idx[static_cast<std::size_t>(t)]);
    }
  }
  return s;
}

TruncatedSCS prototypical(int max_level) {
  std::vector<int> ell(static_cast<std::size_t>(std::max(max_level, 0)) + 1);
  for (std::size_t n = 0; n < ell.size(); ++n) ell[n] = static_cast<int>(n);
  return from_ell(ell, max_level);
}

std::vector<std::size_t> fixed_set(const TruncatedSCS& scs, int n) {
  if (n < 0 || n > scs.max_level()) throw PreconditionError("fixed_set: index outside [0, N]");
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < scs.size(); ++x) {
    if (scs.level(x) > scs.max_level() - 1) continue;
    if (scs.apply(n, x) == x) out.push_back(x);
  }
  return out;
}

SaturationCheck check_saturation(const TruncatedSCS& scs, int n, std::optional<int> up_to) {
  const int N = scs.max_level();
  if (n < -1 || n > N - 1) throw PreconditionError("check_saturation: level outside [-1, N-1]");
  SaturationCheck c;
  int m = up_to.value_or(N);
  if (m < n) throw PreconditionError("check_saturation: up_to below level");
  std::set<std::size_t> fix;
  for (auto x : fixed_set(scs, n + 1))
    if (scs.level(x) <= m) fix.insert(x);
  if (m >= N) c.truncation_limited = !scs.innovation(N).empty();
  std::set<std::size_t> below;
  for (auto x : scs.up_to_level(n)) below.insert(x);
  std::set_difference(fix.begin(), fix.end(), below.begin(), below.end(), std::back_inserter(c.missing));
  std::set_difference(below.begin(), below.end(), fix.begin(), fix.end(), std::back_inserter(c.extra));
  c.holds = c.missing.empty() && c.extra.empty();
  return c;
}

namespace {

std::optional<InnovationWitness> innovation_failure(const TruncatedSCS& scs, int i, int k) {
  for (auto x : scs.innovation(k)) {
    auto y = scs.apply(i, x);
    if (!y) continue;
    if (scs.level(*y) != k + 1) return InnovationWitness{x, i, *y, scs.level(*y)};
  }
  return std::nullopt;
}

std::string witness_text(const TruncatedSCS& scs, const InnovationWitness& w, int k) {
  return "alpha_" + std::to_string(w.shift) + "(" + scs.display(w.element) + ") = " + scs.display(w.image) +
         " with " + scs.display(w.element) + " in D_" + std::to_string(k) + " and " + scs.display(w.image) +
         " in D_" + std::to_string(w.image_level);
}

}  // namespace

DeFinettiReport check_toy_definetti(const TruncatedSCS& scs) {
  DeFinettiReport rep;
  const int N = scs.max_level();
  bool limited = false;
  for (int n = 0; n <= N - 1; ++n) {
    DeFinettiLevel lv;
    lv.n = n;
    lv.shift_n_maps_all_innovations = true;
    for (int k = n; k <= N - 1 && lv.shift_n_maps_all_innovations; ++k)
      if (auto w = innovation_failure(scs, n, k)) {
        lv.shift_n_maps_all_innovations = false;
        lv.shift_n_witness = w;
      }
    auto below = check_saturation(scs, n - 1);
    lv.saturated_below = below.holds;
    lv.saturated_below_limited = below.truncation_limited;
    limited = limited || below.truncation_limited;
    if (!below.missing.empty()) lv.fixed_not_below = below.missing.front();
    lv.saturated_below_up_to_n = check_saturation(scs, n - 1, n).holds;
    lv.all_shifts_map_d_n = true;
    for (int i = 0; i <= n && lv.all_shifts_map_d_n; ++i)
      if (auto w = innovation_failure(scs, i, n)) {
        lv.all_shifts_map_d_n = false;
        lv.all_shifts_witness = w;
      }
    lv.top_shift_maps_d_n = !innovation_failure(scs, n, n).has_value();

    const std::string at = "n=" + std::to_string(n) + ": ";
    if (lv.shift_n_maps_all_innovations && !lv.saturated_below) rep.implications_hold = false;
    if (lv.saturated_below && !lv.all_shifts_map_d_n) rep.implications_hold = false;
    if (lv.top_shift_maps_d_n && !lv.all_shifts_map_d_n) rep.implications_hold = false;
    if (lv.saturated_below_up_to_n != lv.all_shifts_map_d_n) rep.characterization_holds = false;

    if (lv.saturated_below && !lv.shift_n_maps_all_innovations) {
      const auto& w = *lv.shift_n_witness;
      rep.converse_failures.push_back(at + "saturated at level " + std::to_string(n - 1) + " although " +
                                      witness_text(scs, w, scs.level(w.element)));
    }
    if (lv.all_shifts_map_d_n && !lv.saturated_below && lv.fixed_not_below) {
      rep.converse_failures.push_back(at + "alpha_i(D_" + std::to_string(n) + ") in D_" + std::to_string(n + 1) +
                                      " for all i <= " + std::to_string(n) + " although " +
                                      scs.display(*lv.fixed_not_below) + " is fixed by alpha_" +
                                      std::to_string(n) + " outside X_" + std::to_string(n - 1));
    }
    rep.levels.push_back(lv);
  }
  if (limited) rep.caveats.push_back("fixed sets exclude level-" + std::to_string(N) + " elements");
  return rep;
}

Label normal_label(const TruncatedSCS& scs, std::size_t y) {
  const int lv = scs.level(y);
  if (lv > scs.max_level() - 1)
    throw TruncationError("normal label of " + scs.display(y) + " needs shifts above the truncation");
  std::vector<int> support;
  for (int n = 0; n <= lv; ++n) {
    auto a = scs.apply(n, y), b = scs.apply(n + 1, y);
    if (!a || !b) throw TruncationError("shift undefined on " + scs.display(y));
    if (*a != *b) support.push_back(n);
  }
  return Label::from_support(std::move(support));
}

NormalLabelTable normal_labels(const TruncatedSCS& scs) {
  NormalLabelTable t;
  t.labels.resize(scs.size());
  t.source.assign(scs.size(), LabelSource::Unknown);
  const int N = scs.max_level();
  for (std::size_t x = 0; x < scs.size(); ++x)
    if (scs.level(x) <= N - 1) {
      t.labels[x] = normal_label(scs, x);
      t.source[x] = LabelSource::Direct;
    }
  for (std::size_t x = 0; x < scs.size(); ++x) {
    if (t.source[x] != LabelSource::Direct) continue;
    for (int i = 0; i <= N; ++i) {
      auto y = scs.apply(i, x);
      if (!y || t.source[*y] != LabelSource::Unknown) continue;
      t.labels[*y] = insert_zero(*t.labels[x], i);
      t.source[*y] = LabelSource::EpsilonLemma;
    }
  }
  return t;
}

SaturationResult saturate(const TruncatedSCS& scs) {
  const int N = scs.max_level();
  auto table = normal_labels(scs);
  std::vector<int> lev(scs.size());
  std::vector<std::string> caveats;
  int top = N;
  for (std::size_t x = 0; x < scs.size(); ++x) {
    if (table.labels[x]) {
      lev[x] = table.labels[x]->level();
      if (scs.level(x) == N) top = std::min(top, lev[x]);
    } else {
      lev[x] = N;
      caveats.push_back("normal label of " + scs.display(x) + " not determined at truncation; level kept at " +
                        std::to_string(N));
    }
  }
  SaturationResult res{TruncatedSCS(top), {}};
  std::vector<std::optional<std::size_t>> map(scs.size());
  for (std::size_t x = 0; x < scs.size(); ++x) {
    int l = table.labels[x] ? lev[x] : std::min(N, top);
    if (l > top) {
      caveats.push_back("element " + scs.display(x) + " lands at level " + std::to_string(l) +
                        " above the shrunken truncation " + std::to_string(top) + "; dropped");
      continue;
    }
    const auto& e = scs.element(x);
    map[x] = res.scs.add_element(e.id, l, e.name);
  }
  for (std::size_t x = 0; x < scs.size(); ++x) {
    if (!map[x] || res.scs.level(*map[x]) > top - 1) continue;
    for (int i = 0; i < top; ++i) {
      auto y = scs.apply(i, x);
      if (!y || !map[*y]) {
        caveats.push_back("alpha_" + std::to_string(i) + "(" + scs.display(x) + ") not carried over");
        continue;
      }
      res.scs.set_shift(i, *map[x], *map[*y]);
    }
  }
  res.caveats = std::move(caveats);
  return res;
}

std::string shift_graph_dot(const TruncatedSCS& scs) {
  std::vector<bool> has_preimage(scs.size(), false);
  for (std::size_t x = 0; x < scs.size(); ++x)
    for (int i = 0; i < scs.max_level(); ++i)
      if (auto y = scs.apply(i, x); y && *y != x) has_preimage[*y] = true;
  std::ostringstream os;
  os << "digraph scs {\n  rankdir=LR;\n  node [shape=plaintext, fontname=\"Helvetica\"];\n";
  for (int k = -1; k <= scs.max_level(); ++k) {
    auto d = scs.innovation(k);
    if (d.empty()) continue;
    os << "  { rank=same;";
    for (auto x : d) os << " \"" << scs.element(x).id << "\";";
    os << " }\n";
  }
  for (std::size_t x = 0; x < scs.size(); ++x) {
    os << "  \"" << scs.element(x).id << "\" [label=\"" << scs.display(x) << "\"";
    if (!has_preimage[x]) os << ", fontname=\"Helvetica-Bold\"";
    os << "];\n";
  }
  for (std::size_t x = 0; x < scs.size(); ++x)
    for (int i = 0; i < scs.max_level(); ++i)
      if (auto y = scs.stored(i, x); y && *y != x)
        os << "  \"" << scs.element(x).id << "\" -> \"" << scs.element(*y).id << "\" [label=\"" << i << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace cosimplex
