#pragma once

// Equivalence classes of a truncated SCS, its minimal normal extension built from one
// label layer per class, and an isomorphism invariant.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosimplex/report.hpp"
#include "cosimplex/scs.hpp"

namespace cosimplex {

// chi_hat(alpha_j y) = insert_zero(chi_hat(y), j) for lvl(y) <= N-2 and every j.
PropertyReport check_epsilon_lemma(const TruncatedSCS& scs);

struct EquivalenceClasses {
  std::vector<std::vector<std::size_t>> classes;   // ascending members, ordered by first member
  std::vector<std::size_t> class_of;               // element -> class
  std::vector<int> rank;                           // per class; -1 when labels are unknown
  std::vector<std::pair<std::size_t, std::size_t>> undecided;  // pairs the truncation cannot settle
  std::vector<std::string> label_collisions;       // equal normal labels inside one class
  bool decided() const { return undecided.empty(); }
};

// x ~ y when their pushes to the join of their normal labels coincide; images under the
// shifts are joined to their sources. Pushes must stay inside the truncation.
EquivalenceClasses equivalence_classes(const TruncatedSCS& scs);

struct NormalExtension {
  TruncatedSCS scs;
  std::vector<std::size_t> embedding;   // input element -> extension element
  std::vector<std::size_t> layer_of;    // extension element -> class
  std::vector<Label> vertex;            // extension element -> label inside its layer
  std::vector<std::string> caveats;
};

// One layer per class realized as {chi : rank chi = k, lev chi <= N} with alpha_i = insert_zero;
// y maps to (class of y, chi_hat y). Throws TruncationError when a class is undecided or a
// label is unknown, PreconditionError on a label collision.
NormalExtension minimal_normal_extension(const TruncatedSCS& scs);

struct LayerInvariant {
  int rank = 0;
  // (normal label, level) of the generators: elements of level n outside alpha_i(X_{n-1}), i < n.
  std::vector<std::pair<Label, int>> generators;
  std::vector<Label> antichain;  // minimal generator labels
  auto operator<=>(const LayerInvariant&) const = default;
};

struct SCSInvariant {
  int max_level = 0;
  std::map<int, int> layers;             // rank -> multiplicity
  std::vector<LayerInvariant> classes;   // sorted
  bool normal = false;
  std::vector<std::string> caveats;
};

SCSInvariant classify(const TruncatedSCS& scs);

// Equal invariants (including truncation level).
bool is_isomorphic(const TruncatedSCS& a, const TruncatedSCS& b);

// The tower of the structure satisfies the normality criteria.
bool is_normal(const TruncatedSCS& scs);

}  // namespace cosimplex
