#pragma once

// Vertices of the label category: finite subsets of N_0, written as bit strings
// ending in 1, with "0" for the empty label.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cosimplex {

class Label {
 public:
  Label() = default;  // empty label

  // Strictly increasing, non-negative entries.
  static Label from_support(std::vector<int> support);
  // "0" (empty) or a 0/1 string ending in 1. Throws InputError.
  static Label parse(std::string_view bits);
  // Initial segment {0, ..., rank-1}.
  static Label root(int rank);

  const std::vector<int>& support() const { return support_; }
  int rank() const { return static_cast<int>(support_.size()); }
  int level() const { return support_.empty() ? -1 : support_.back(); }
  bool is_root() const { return level() == rank() - 1; }
  bool bit(int n) const;

  std::string to_string() const;

  bool operator==(const Label& other) const = default;
  // Enumeration order: by level, then lexicographic on the bit string (0 < 1).
  std::strong_ordering operator<=>(const Label& other) const;

 private:
  std::vector<int> support_;
};

// Upsilon coordinates: {v1 < ... < vk} -> (v1, v2 - v1 - 1, ..., vk - v(k-1) - 1).
// The order on labels of a fixed rank is coordinatewise in these tuples.
using UpsilonTuple = std::vector<int>;

UpsilonTuple to_upsilon(const Label& chi);
Label from_upsilon(const UpsilonTuple& t);  // throws PreconditionError on a negative entry

// Coface on labels: inserts a 0 at position i (identity once i exceeds the level).
Label insert_zero(const Label& chi, int i);

Label root_of(const Label& chi);

// Transposition s_j (j >= 1) swaps bits j-1 and j.
Label transpose_action(const Label& chi, int j);

// Some morphism source -> target exists: equal rank and the order-preserving bijection
// lambda of supports has 0 <= lambda(x) - x nondecreasing.
bool is_morphism(const Label& source, const Label& target);

// Coordinatewise maximum in Upsilon coordinates. Precondition: equal rank.
Label join(const Label& a, const Label& b);

// Insertion positions i_1, i_2, ... with target = insert_zero(... insert_zero(source, i_1) ..., i_m).
// nullopt when no morphism exists.
std::optional<std::vector<int>> push_word(const Label& source, const Label& target);

// All labels with level <= max_level (optionally of one rank), in enumeration order.
std::vector<Label> enumerate_labels(int max_level, std::optional<int> rank = std::nullopt);

// Degree-one edges of the label skeleton: target = source with one Upsilon coordinate
// raised by one. coordinate is 1-based (1 = prepend a zero).
struct SkeletonEdge {
  Label source;
  Label target;
  int coordinate;
};

std::vector<SkeletonEdge> skeleton_edges(int max_rank, int max_level);

// Graphviz rendering of the skeleton: one node per label, roots in bold,
// one colour per Upsilon coordinate, one rank row per level.
std::string skeleton_dot(int max_rank, int max_level);

}  // namespace cosimplex
