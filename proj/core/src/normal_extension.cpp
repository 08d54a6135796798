#include "cosimplex/normal_extension.hpp"

#include <algorithm>
#include <numeric>

#include "cosimplex/error.hpp"
#include "cosimplex/tower.hpp"

namespace cosimplex {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

PropertyReport check_epsilon_lemma(const TruncatedSCS& scs) {
  PropertyReport rep;
  const int N = scs.max_level();
  bool holds = true, any = false;
  std::string witness;
  for (std::size_t y = 0; y < scs.size() && holds; ++y) {
    if (scs.level(y) > N - 2) continue;
    auto chi = normal_label(scs, y);
    for (int j = 0; j <= N; ++j) {
      auto img = scs.apply(j, y);
      if (!img) continue;
      any = true;
      auto lhs = normal_label(scs, *img);
      auto rhs = insert_zero(chi, j);
      if (!(lhs == rhs)) {
        holds = false;
        witness = "y=" + scs.display(y) + " j=" + std::to_string(j) + ": " + lhs.to_string() + " vs " + rhs.to_string();
        break;
      }
    }
  }
  if (any) rep.add("normal label of alpha_j y is insert_zero(label of y, j)", holds, 0, witness);
  else rep.untested("normal label of alpha_j y is insert_zero(label of y, j)", "no element of level <= N-2");
  return rep;
}

EquivalenceClasses equivalence_classes(const TruncatedSCS& scs) {
  const std::size_t n = scs.size();
  const int N = scs.max_level();
  auto table = normal_labels(scs);
  UnionFind uf(n);
  for (std::size_t x = 0; x < n; ++x)
    for (int i = 0; i < N; ++i)
      if (auto y = scs.stored(i, x)) uf.unite(x, *y);

  std::vector<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (uf.find(x) == uf.find(y)) continue;
      if (!table.labels[x] || !table.labels[y]) {
        pending.emplace_back(x, y);
        continue;
      }
      const auto& a = *table.labels[x];
      const auto& b = *table.labels[y];
      if (a.rank() != b.rank()) continue;
      auto j = join(a, b);
      std::optional<std::size_t> px, py;
      if (j.level() <= N) {
        px = scs.apply_word(*push_word(a, j), x);
        py = scs.apply_word(*push_word(b, j), y);
      }
      if (!px || !py) pending.emplace_back(x, y);
      else if (*px == *py) uf.unite(x, y);
    }

  EquivalenceClasses res;
  res.class_of.assign(n, 0);
  std::map<std::size_t, std::size_t> index;
  for (std::size_t x = 0; x < n; ++x) {
    auto r = uf.find(x);
    auto it = index.find(r);
    if (it == index.end()) {
      it = index.emplace(r, res.classes.size()).first;
      res.classes.emplace_back();
      res.rank.push_back(-1);
    }
    res.classes[it->second].push_back(x);
    res.class_of[x] = it->second;
    if (table.labels[x]) res.rank[it->second] = table.labels[x]->rank();
  }
  for (auto [x, y] : pending)
    if (res.class_of[x] != res.class_of[y]) res.undecided.emplace_back(x, y);
  for (const auto& cls : res.classes) {
    std::map<Label, std::size_t> seen;
    for (auto x : cls) {
      if (!table.labels[x]) continue;
      auto [it, fresh] = seen.emplace(*table.labels[x], x);
      if (!fresh)
        res.label_collisions.push_back(scs.display(it->second) + " and " + scs.display(x) + " share label " +
                                       table.labels[x]->to_string());
    }
  }
  return res;
}

NormalExtension minimal_normal_extension(const TruncatedSCS& scs) {
  const int N = scs.max_level();
  auto eq = equivalence_classes(scs);
  if (!eq.decided())
    throw TruncationError("minimal normal extension: " + std::to_string(eq.undecided.size()) +
                          " pairs undecided at this truncation, first " + scs.display(eq.undecided[0].first) + "," +
                          scs.display(eq.undecided[0].second));
  if (!eq.label_collisions.empty()) throw PreconditionError("minimal normal extension: " + eq.label_collisions[0]);
  auto table = normal_labels(scs);
  for (std::size_t x = 0; x < scs.size(); ++x)
    if (!table.labels[x]) throw TruncationError("normal label of " + scs.display(x) + " unknown at this truncation");

  NormalExtension ext{TruncatedSCS(N), {}, {}, {}, {}};
  std::vector<std::map<Label, std::size_t>> where(eq.classes.size());
  int next_id = 0;
  for (std::size_t c = 0; c < eq.classes.size(); ++c) {
    for (const auto& chi : enumerate_labels(N, eq.rank[c])) {
      auto idx = ext.scs.add_element(next_id++, chi.level(), "c" + std::to_string(c) + ":" + chi.to_string());
      ext.layer_of.push_back(c);
      ext.vertex.push_back(chi);
      where[c].emplace(chi, idx);
    }
    for (const auto& [chi, idx] : where[c]) {
      if (chi.level() > N - 1) continue;
      for (int i = 0; i < N; ++i) {
        auto tgt = insert_zero(chi, i);
        if (tgt == chi) continue;
        ext.scs.set_shift(i, idx, where[c].at(tgt));
      }
    }
  }
  ext.embedding.resize(scs.size());
  for (std::size_t x = 0; x < scs.size(); ++x) {
    auto c = eq.class_of[x];
    ext.embedding[x] = where[c].at(*table.labels[x]);
    int lev = table.labels[x]->level();
    if (lev != scs.level(x))
      ext.caveats.push_back(scs.display(x) + " moves from level " + std::to_string(scs.level(x)) + " to " +
                            std::to_string(lev));
  }
  return ext;
}

SCSInvariant classify(const TruncatedSCS& scs) {
  SCSInvariant inv;
  inv.max_level = scs.max_level();
  auto eq = equivalence_classes(scs);
  auto table = normal_labels(scs);
  if (!eq.decided()) inv.caveats.push_back("equivalence undecided for some pairs; classes may be finer than true");
  for (const auto& c : eq.label_collisions) inv.caveats.push_back(c);

  std::vector<bool> generated(scs.size(), false);
  for (std::size_t x = 0; x < scs.size(); ++x)
    for (int i = 0; i < scs.max_level(); ++i)
      if (auto y = scs.stored(i, x); y && *y != x && scs.level(x) <= scs.level(*y) - 1 && i <= scs.level(*y) - 1)
        generated[*y] = true;

  for (std::size_t c = 0; c < eq.classes.size(); ++c) {
    LayerInvariant layer;
    layer.rank = eq.rank[c];
    for (auto x : eq.classes[c]) {
      if (generated[x]) continue;
      if (!table.labels[x]) {
        inv.caveats.push_back("generator " + scs.display(x) + " has no normal label at this truncation");
        continue;
      }
      layer.generators.emplace_back(*table.labels[x], scs.level(x));
    }
    std::sort(layer.generators.begin(), layer.generators.end());
    for (const auto& [chi, lvl] : layer.generators) {
      bool minimal = std::none_of(layer.generators.begin(), layer.generators.end(), [&](const auto& g) {
        return !(g.first == chi) && is_morphism(g.first, chi);
      });
      if (minimal && std::find(layer.antichain.begin(), layer.antichain.end(), chi) == layer.antichain.end())
        layer.antichain.push_back(chi);
    }
    inv.layers[layer.rank] += 1;
    inv.classes.push_back(std::move(layer));
  }
  std::sort(inv.classes.begin(), inv.classes.end());
  inv.normal = is_normal(scs);
  return inv;
}

bool is_isomorphic(const TruncatedSCS& a, const TruncatedSCS& b) {
  if (a.size() != b.size() || a.max_level() != b.max_level()) return false;
  auto ia = classify(a), ib = classify(b);
  if (!ia.caveats.empty() || !ib.caveats.empty())
    throw TruncationError("isomorphism test needs both structures fully classifiable at their truncation");
  return ia.classes == ib.classes;
}

bool is_normal(const TruncatedSCS& scs) { return check_normal(from_scs<Rational>(scs)).normal(); }

}  // namespace cosimplex
