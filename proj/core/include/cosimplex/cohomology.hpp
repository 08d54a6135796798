#pragma once

// Cochain complex of a truncated tower over the rationals. Cochains of level n are the
// vectors of H_n; matrices are written in the coordinates of the level bases, and every
// reported basis is returned as ambient vectors.

#include <vector>

#include "cosimplex/report.hpp"
#include "cosimplex/scs.hpp"
#include "cosimplex/tower.hpp"

namespace cosimplex {

class CochainComplex {
 public:
  explicit CochainComplex(Tower<Rational> tower);

  const Tower<Rational>& tower() const { return tower_; }
  int max_level() const { return tower_.max_level(); }
  // Coboundary of level n in level-basis coordinates, dim H_{n+1} x dim H_n; -2 <= n <= N-1.
  const QMatrix& coboundary(int n) const;
  // Sum over i <= n+1 of (-1)^{n+1-i} delta_i applied to columns of H_n (ambient vectors).
  QMatrix apply(int n, const QMatrix& x) const;
  // The same alternating sum with alpha_i on the whole shift domain: the top term is
  // alpha_{n+1} instead of the inclusion. n = -2 gives 0.
  QMatrix apply_extended(int n, const QMatrix& x) const;

 private:
  Tower<Rational> tower_;
  std::vector<QMatrix> d_;  // [n+2]
};

CochainComplex build_complex(const TruncatedSCS& scs);
CochainComplex build_complex(const Tower<Rational>& tower);

struct CohomologyLevel {
  int k = 0;
  std::size_t dim_cochains = 0, dim_cocycles = 0, dim_coboundaries = 0, dim_cohomology = 0;
  QMatrix cocycles, coboundaries, representatives;  // ambient columns
};

struct CohomologyReport {
  std::vector<CohomologyLevel> levels;  // k = -1..N-1
  std::vector<std::string> caveats;
  bool trivial() const;
};

CohomologyReport cohomology(const CochainComplex& complex);

// Hypothesis of the explicit formula at level k: alpha_i(D_l) in D_{l+1} for i <= l <= k.
bool explicit_formula_applies(const CochainComplex& complex, int k);

// Columns (d - ∂_ext^{l-1} d), d in D_l, l < k, k - l odd. Throws PreconditionError when
// explicit_formula_applies fails, TruncationError when k is outside 0..N-1.
QMatrix explicit_cocycles(const CochainComplex& complex, int k);
// The same family written as ∂^{k-1} d.
QMatrix explicit_coboundaries(const CochainComplex& complex, int k);

// Cochain condition, coboundaries inside cocycles, the intersection identities with lower
// levels, the even/odd evaluation rule, fixed points of the extended coboundary, and both
// explicit routes against the kernel wherever the hypothesis holds.
PropertyReport check_cocycle_identities(const CochainComplex& complex);

}  // namespace cosimplex
