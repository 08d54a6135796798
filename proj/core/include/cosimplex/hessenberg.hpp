#pragma once

// Unitaries u_1..u_M on the ambient of a tower, the symmetric-group representation of a
// normal tower, and the Hessenberg factorization conditions.

#include <vector>

#include "cosimplex/report.hpp"
#include "cosimplex/tower.hpp"

namespace cosimplex {

template <class T>
struct HessenbergData {
  Tower<T> tower;
  std::vector<Matrix<T>> u;  // u[m-1] is u_m

  int count() const { return static_cast<int>(u.size()); }
  const Matrix<T>& at(int m) const { return u.at(static_cast<std::size_t>(m - 1)); }
  // u_{from} u_{from+1} ... u_{to}; identity when from > to.
  Matrix<T> product(int from, int to) const;
};

// u_j carries L_chi onto L_{s_j chi} by matching pushed root bases, identity off H_N;
// j = 1..N. Throws PreconditionError on non-normal input.
template <class T>
HessenbergData<T> build_symmetric_rep(const Tower<T>& tower);

// Involutions, braid relations, coface and shift factorizations, the four-case
// relation table with the partial shifts, and u_j L_chi = L_{s_j chi}.
template <class T>
PropertyReport check_symmetric_rep(const HessenbergData<T>& data);

struct HessenbergReport {
  PropertyReport checks;
  bool condition_shift_intertwines = false;   // u_{j+1} alpha_i = alpha_i u_j, i < j
  bool condition_adjacent = false;            // u_{j+1} alpha_{j-1} = alpha_{j-1} u_j
  bool condition_braid_on_range = false;      // u_j u_{j+1} u_j = u_{j+1} u_j u_{j+1} on alpha_{j+1} H
  bool braided_conditions_agree() const {
    return condition_shift_intertwines == condition_adjacent && condition_adjacent == condition_braid_on_range;
  }
};

// alpha_n is taken as the finite product u_{n+1} ... u_M on H_{N-1}.
template <class T>
HessenbergReport check_hessenberg(const HessenbergData<T>& data);

// Replaces u_1 by u_1 composed with the reflection in the first innovation vector of
// level 3, which keeps (H1) and (H2) and breaks (C) against u_3. Needs N >= 3 and D_3 != 0.
template <class T>
HessenbergData<T> break_commutation(const HessenbergData<T>& data);

}  // namespace cosimplex
