#pragma once

// Truncated semi-cosimplicial sets: elements carry a level in [-1, N]; the partial shift
// alpha_i is stored for i < N on elements of level <= N-1. For i >= lvl(x)+1 the shift
// acts as the identity, so those entries may be omitted.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cosimplex/labels.hpp"

namespace cosimplex {

struct Element {
  int id = 0;
  std::string name;  // display name; empty means the id is used
  int level = 0;
};

class TruncatedSCS {
 public:
  explicit TruncatedSCS(int max_level = 0);

  // Returns the internal index. Throws InputError on a duplicate id.
  std::size_t add_element(int id, int level, std::string name = {});
  // Stores alpha_i(from) = to (internal indices), 0 <= i < max_level.
  void set_shift(int i, std::size_t from, std::size_t to);
  void clear_shift(int i, std::size_t from);
  void set_level(std::size_t x, int level) { elements_[x].level = level; }

  int max_level() const { return max_level_; }
  std::size_t size() const { return elements_.size(); }
  const Element& element(std::size_t x) const { return elements_[x]; }
  int level(std::size_t x) const { return elements_[x].level; }
  std::string display(std::size_t x) const;
  std::optional<std::size_t> index_of(int id) const;

  // Raw table entry (no implicit identities).
  std::optional<std::size_t> stored(int i, std::size_t x) const;
  // alpha_i(x) when determined by the truncation, nullopt otherwise.
  std::optional<std::size_t> apply(int i, std::size_t x) const;
  // Composite alpha_{word.back()} ... alpha_{word.front()} (front applied first).
  std::optional<std::size_t> apply_word(const std::vector<int>& word, std::size_t x) const;

  // Elements of level <= k, ascending index.
  std::vector<std::size_t> up_to_level(int k) const;
  // D_k = X_k \ X_{k-1}.
  std::vector<std::size_t> innovation(int k) const;

 private:
  int max_level_;
  std::vector<Element> elements_;
  std::vector<std::vector<std::optional<std::size_t>>> shifts_;  // [i][x]
};

enum class ViolationKind { Tower, Domain, Adaptedness, FixedPoint, Injectivity, Cosimplicial };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

ValidationReport validate(const TruncatedSCS& scs);

// Prototypical shifts on {0..N} with lvl(n) = ell(n); elements with ell(n) > N are absent.
// ell shorter than N+1 is continued by ell(n) = n.
// Throws PreconditionError naming the first index violating n <= ell(n) <= ell(n-1) + 1.
TruncatedSCS from_ell(std::vector<int> ell, int max_level);
TruncatedSCS prototypical(int max_level);

// First index where the ell-function inequality fails, if any.
std::optional<int> first_ell_violation(const std::vector<int>& ell, int max_level);

// {x : lvl(x) <= N-1, alpha_n(x) = x}; 0 <= n <= N.
std::vector<std::size_t> fixed_set(const TruncatedSCS& scs, int n);

struct SaturationCheck {
  bool holds = false;
  bool truncation_limited = false;        // level-N elements could not be evaluated
  std::vector<std::size_t> missing;       // in fixed set but not in X_n
  std::vector<std::size_t> extra;         // in X_n but not fixed
};

// X_n = Fix(alpha_{n+1}) (intersected with X_m when up_to is given); -1 <= n <= N-1.
SaturationCheck check_saturation(const TruncatedSCS& scs, int n, std::optional<int> up_to = std::nullopt);

struct InnovationWitness {
  std::size_t element;
  int shift;
  std::size_t image;
  int image_level;
};

struct DeFinettiLevel {
  int n = 0;
  bool shift_n_maps_all_innovations = false;  // alpha_n(D_k) in D_{k+1} for n <= k <= N-1
  bool saturated_below = false;               // X_{n-1} = Fix(alpha_n)
  bool saturated_below_limited = false;
  bool saturated_below_up_to_n = false;       // X_{n-1} = Fix(alpha_n) ∩ X_n
  bool all_shifts_map_d_n = false;            // alpha_i(D_n) in D_{n+1} for all i <= n
  bool top_shift_maps_d_n = false;            // alpha_n(D_n) in D_{n+1}
  std::optional<InnovationWitness> shift_n_witness;
  std::optional<InnovationWitness> all_shifts_witness;
  std::optional<std::size_t> fixed_not_below;  // element in Fix(alpha_n) \ X_{n-1}
};

struct DeFinettiReport {
  std::vector<DeFinettiLevel> levels;
  bool implications_hold = true;   // first => second => third, one-for-all
  bool characterization_holds = true;  // saturated up to n iff all shifts map D_n
  std::vector<std::string> converse_failures;
  std::vector<std::string> caveats;
};

DeFinettiReport check_toy_definetti(const TruncatedSCS& scs);

// chi_hat(y)_n = 1 iff alpha_n(y) != alpha_{n+1}(y). Needs lvl(y) <= N-1.
Label normal_label(const TruncatedSCS& scs, std::size_t y);

enum class LabelSource { Direct, EpsilonLemma, Unknown };

// Normal labels for all elements; level-N elements get the label through an
// evaluable preimage alpha_i(x) = y as insert_zero(chi_hat(x), i).
struct NormalLabelTable {
  std::vector<std::optional<Label>> labels;
  std::vector<LabelSource> source;
};

NormalLabelTable normal_labels(const TruncatedSCS& scs);

struct SaturationResult {
  TruncatedSCS scs;
  std::vector<std::string> caveats;
};

// Re-levels every element to the level of its normal label.
SaturationResult saturate(const TruncatedSCS& scs);

// Graphviz rendering of the shift action; root elements (no preimage other than
// themselves) are bold.
std::string shift_graph_dot(const TruncatedSCS& scs);

}  // namespace cosimplex
