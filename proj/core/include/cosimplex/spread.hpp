#pragma once

// Finite spreadable families iota_0..iota_N : K -> ambient, their operator angle, the minimal
// tower they generate, and the conditional orthogonality statement.
//
// K carries the inner product given by `gram` (iota_n^T iota_n = gram). When `slot_dim` is set
// the ambient is a direct sum of slots -1..L of that size, on which alpha_n inserts an empty
// slot at position n; that is what the fixed-space projection Q is computed against.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosimplex/report.hpp"
#include "cosimplex/tower.hpp"

namespace cosimplex {

template <class T>
struct SpreadableFamily {
  std::size_t k_dim = 0;
  std::size_t ambient_dim = 0;
  std::vector<Matrix<T>> isometries;  // ambient x k_dim each
  Matrix<T> gram;                     // k_dim x k_dim; empty means identity
  std::optional<std::size_t> slot_dim;

  int max_index() const { return static_cast<int>(isometries.size()) - 1; }
  Matrix<T> inner() const { return gram.rows() ? gram : Matrix<T>::identity(k_dim); }
  // Slot-insertion shift alpha_n on the slot ambient; the top slot is outside its domain.
  Matrix<T> slot_shift(int n) const;
  // Ambient columns of slots -1..top.
  Matrix<T> slot_span(int top) const;
};

template <class T>
struct AngleReport {
  Matrix<T> angle;                  // gram^{-1} iota_1^T iota_0
  bool isometric = true;            // iota_n^T iota_n = gram
  bool spreadable = true;           // gram^{-1} iota_j^T iota_i = angle for all i < j
  std::optional<std::pair<int, int>> witness;
  double deviation = 0.0;
  bool self_adjoint = true;         // gram * angle symmetric
  bool positive = true;             // angle >= 0 in the K inner product
  bool contraction = true;          // angle <= 1
  std::string certificate;          // LDL^T pivots (exact) or generalized eigenvalue range (float)
};

template <class T>
AngleReport<T> operator_angle(const SpreadableFamily<T>& family, double tol = kDefaultTolerance);

// iota_n x = sqrt(C) x in slot -1 plus sqrt(1 - C) x in slot n, n = 0..N.
// Exact only when C is diagonal with c and 1 - c rational squares; nullopt otherwise.
std::optional<SpreadableFamily<Rational>> from_contraction_exact(const QMatrix& c, int max_index);
// Square roots through a symmetric eigendecomposition. Throws PreconditionError unless
// 0 <= C <= 1 up to tol.
SpreadableFamily<double> from_contraction(const DMatrix& c, int max_index, double tol = kDefaultTolerance);

// The ambient vectors e_{-1} + e_k, k = 0..N, over coordinates -1..N (left unnormalized).
SpreadableFamily<Rational> l2_example(int max_index);

// H_{-1} = iota_0 of the vectors with iota_1 y = iota_0 y, H_k = span iota_0..iota_k;
// alpha_n fixes iota_l (l < n) and sends iota_l to iota_{l+1} (l >= n) on H_{N-1}.
template <class T>
Tower<T> minimal_sch(const SpreadableFamily<T>& family, double tol = kDefaultTolerance);

// K = H_0 with its level basis, iota_n = alpha_0^n on H_0, n = 0..N.
template <class T>
SpreadableFamily<T> roundtrip_from_sch(const Tower<T>& tower);

// Needs slot_dim. Orthogonality of (1 - Q) iota_n(K), the two angle identities, positivity,
// agreement of slot shifts with the minimal tower shifts, and C^2 = C when saturated.
template <class T>
PropertyReport check_theorem_C(const SpreadableFamily<T>& family, double tol = kDefaultTolerance);

struct FamilyEquivalence {
  bool equivalent = false;
  bool exact_decision = false;
  std::vector<std::string> spectrum_a, spectrum_b;  // char. polynomial coefficients or eigenvalues
  std::optional<DMatrix> kernel_unitary;            // U : K_a -> K_b with C_b U = U C_a
  std::optional<DMatrix> intertwiner;               // ambient_b x ambient_a on the minimal towers
  PropertyReport checks;
};

// Equal dim K and unitarily similar angles. The exact overload decides through the
// characteristic polynomial; the intertwiner is always built in floating point.
FamilyEquivalence family_equivalence(const SpreadableFamily<Rational>& a, const SpreadableFamily<Rational>& b);
FamilyEquivalence family_equivalence(const SpreadableFamily<double>& a, const SpreadableFamily<double>& b,
                                     double tol = kDefaultTolerance);

template <class U, class T>
SpreadableFamily<U> cast_family(const SpreadableFamily<T>& f) {
  SpreadableFamily<U> out;
  out.k_dim = f.k_dim;
  out.ambient_dim = f.ambient_dim;
  for (const auto& m : f.isometries) out.isometries.push_back(m.template cast<U>());
  out.gram = f.gram.template cast<U>();
  out.slot_dim = f.slot_dim;
  return out;
}

// Coefficients of det(x - m), highest degree first, by Faddeev-LeVerrier.
std::vector<Rational> characteristic_polynomial(const QMatrix& m);

}  // namespace cosimplex
