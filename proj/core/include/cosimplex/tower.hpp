#pragma once

// Truncated Hilbert towers H_{-1} ⊆ H_0 ⊆ ... ⊆ H_N inside a coordinate ambient space.
// Shift matrices act on the ambient and are meaningful on the shift domain, a subspace
// containing H_{N-1}; for i >= N the shift is the identity on H_{N-1}.
// Adjoints are transposes: only real scalars are supported.

#include <optional>
#include <string>
#include <vector>

#include "cosimplex/labels.hpp"
#include "cosimplex/linalg.hpp"
#include "cosimplex/report.hpp"
#include "cosimplex/scs.hpp"

namespace cosimplex {

template <class T>
class Tower {
 public:
  // spans[k+1] spans H_k for k = -1..N; shifts[i] for i = 0..N-1 are ambient x ambient.
  // domain defaults to H_{N-1}.
  Tower(std::size_t ambient_dim, std::vector<Matrix<T>> spans, std::vector<Matrix<T>> shifts,
        std::optional<Matrix<T>> domain = std::nullopt, double tol = kDefaultTolerance);

  int max_level() const { return static_cast<int>(levels_.size()) - 2; }
  std::size_t ambient_dim() const { return ambient_; }
  double tol() const { return tol_; }

  // Independent columns spanning H_k (empty below -1, H_N above N).
  const Matrix<T>& level_basis(int k) const;
  std::size_t dim(int k) const { return level_basis(k).cols(); }
  // Gram-Schmidt basis of D_k = H_k ⊖ H_{k-1}, processed in column order.
  const Matrix<T>& innovation(int k) const;
  // Orthogonal projector onto H_k.
  const Matrix<T>& projector(int k) const;

  const Matrix<T>& domain() const { return domain_; }
  bool domain_is_top() const { return domain_is_top_; }
  const Matrix<T>& shift(int i) const { return shifts_.at(static_cast<std::size_t>(i)); }
  // alpha_i applied to columns lying in the domain.
  Matrix<T> apply(int i, const Matrix<T>& x) const;
  // coface delta_i : H_{k-1} -> H_k applied to columns of H_{k-1}; delta_k is the inclusion.
  Matrix<T> coface(int i, int k, const Matrix<T>& x) const;
  // Adjoint of delta_i : H_{k-1} -> H_k as an ambient operator (P_{k-1} alpha_i^T).
  Matrix<T> coface_adjoint(int i, int k) const;

  Matrix<T> zero_vectors() const { return Matrix<T>(ambient_, 0); }

 private:
  std::size_t ambient_;
  double tol_;
  std::vector<Matrix<T>> levels_;      // [k+1]
  std::vector<Matrix<T>> innovations_; // [k+1]
  std::vector<Matrix<T>> projectors_;  // [k+1]
  std::vector<Matrix<T>> shifts_;
  Matrix<T> domain_;
  bool domain_is_top_ = true;
  Matrix<T> empty_;
};

// Orthonormal-basis interpretation of a set-level structure.
template <class T>
Tower<T> from_scs(const TruncatedSCS& scs);

// Tower invariants: nesting, domain, isometry, fixed action, adaptedness, shift relations.
template <class T>
PropertyReport check_tower(const Tower<T>& tower);

// Basis of {x in domain : alpha_n x = x}; 0 <= n <= N-1, or n >= N when the domain is H_{N-1}.
template <class T>
Matrix<T> fixed_space(const Tower<T>& tower, int n);

struct TowerDeFinettiLevel {
  int n = 0;
  bool shift_n_maps_all_innovations = false;
  bool saturated_below = false;         // H_{n-1} = fixed space of alpha_n (over the domain)
  bool saturated_below_up_to_n = false; // H_{n-1} = fixed space ∩ H_n
  bool all_shifts_map_d_n = false;
  bool top_shift_maps_d_n = false;
  bool fixed_space_beyond_top = false;  // fixed vectors outside H_{N-1}
};

struct TowerDeFinettiReport {
  std::vector<TowerDeFinettiLevel> levels;
  bool implications_hold = true;
  bool characterization_holds = true;
  bool projection_identity_holds = true;  // P̂_n alpha_i = alpha_i P̂_{n-1} on H_{N-2}
  std::vector<std::string> converse_failures;
  std::vector<std::string> caveats;
};

template <class T>
TowerDeFinettiReport check_toy_definetti(const Tower<T>& tower);

template <class T>
struct LabeledSubspace {
  Label label;
  Matrix<T> basis;
};

// Root space of level k: vectors of D_k orthogonal to alpha_i(D_{k-1}), i <= k-1.
template <class T>
Matrix<T> root_space(const Tower<T>& tower, int k);

// Nonzero labeled subspaces with level <= max_level (<= N), enumeration order. Each basis
// is the image of the root-space basis under the push word from the root label.
template <class T>
std::vector<LabeledSubspace<T>> labeled_subspaces(const Tower<T>& tower, int max_level);

// Every H_k (k <= max_level) lies in the span of labeled subspaces of level <= k.
template <class T>
PropertyReport check_label_span(const Tower<T>& tower, int max_level);

struct NormalityReport {
  bool adjoint_identity = true;     // delta_{j-1} delta_i^* = delta_i^* delta_j
  bool complement_criterion = true; // delta_j(H_k ⊖ delta_i H_{k-1}) ⊆ H_{k+1} ⊖ delta_i H_k
  bool orthogonal_labels = true;    // labeled subspaces pairwise orthogonal
  std::string adjoint_witness, complement_witness, orthogonality_witness;
  PropertyReport decomposition;     // filled when all three criteria hold
  bool agree() const {
    return adjoint_identity == complement_criterion && complement_criterion == orthogonal_labels;
  }
  bool normal() const { return adjoint_identity && complement_criterion && orthogonal_labels; }
};

template <class T>
NormalityReport check_normal(const Tower<T>& tower);

// d_n = dim of the level-n root space, n = -1..N.
template <class T>
std::vector<std::size_t> root_dimensions(const Tower<T>& tower);

template <class T>
struct TowerEquivalence {
  bool equivalent = false;
  std::vector<std::size_t> dims_a, dims_b;
  std::optional<Matrix<T>> intertwiner;  // ambient_b x ambient_a, zero off H_N
  PropertyReport checks;                 // verification of the intertwiner
};

// Normal towers are unitarily equivalent iff their root dimensions agree; when they do,
// the intertwiner maps pushed root bases onto pushed root bases.
template <class T>
TowerEquivalence<T> tower_equivalence(const Tower<T>& a, const Tower<T>& b);

}  // namespace cosimplex
