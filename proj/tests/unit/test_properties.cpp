#include <gtest/gtest.h>

#include <set>

#include "cosimplex/cohomology.hpp"
#include "cosimplex/error.hpp"
#include "cosimplex/hessenberg.hpp"
#include "cosimplex/normal_extension.hpp"
#include "cosimplex/spread.hpp"
#include "support.hpp"

using namespace cosimplex;

namespace {

// Normal label straight from the definition on raw bits: bit n set iff alpha_n y != alpha_{n+1} y.
oracle::Bits raw_label(const TruncatedSCS& s, std::size_t y) {
  oracle::Bits b;
  for (int n = 0; n <= s.level(y); ++n) b.push_back(s.apply(n, y) != s.apply(n + 1, y) ? 1 : 0);
  while (!b.empty() && b.back() == 0) b.pop_back();
  return b;
}

oracle::Bits insert_zero_bits(oracle::Bits b, int j) {
  if (j < static_cast<int>(b.size())) b.insert(b.begin() + j, 0);
  return b;
}

oracle::EllFamily ell_oracle(std::vector<int> ell, int N) {
  oracle::EllFamily o;
  o.N = N;
  o.ell = std::move(ell);
  while (static_cast<int>(o.ell.size()) <= N) o.ell.push_back(static_cast<int>(o.ell.size()));
  return o;
}

bool all_saturated(const TruncatedSCS& s) {
  for (int k = -1; k <= s.max_level() - 1; ++k)
    if (!check_saturation(s, k).holds) return false;
  return true;
}

}  // namespace

TEST(Properties, UpsilonRoundTrip) {
  for (const auto& chi : enumerate_labels(12)) {
    auto t = to_upsilon(chi);
    EXPECT_EQ(t, oracle::upsilon(oracle::bits_of(chi)));
    EXPECT_EQ(from_upsilon(t), chi);
  }
  EXPECT_THROW(from_upsilon({1, -1}), PreconditionError);
}

TEST(Properties, MorphismMatchesIncreasingMapSearch) {
  auto labels = enumerate_labels(6);
  std::size_t yes = 0;
  for (const auto& a : labels)
    for (const auto& b : labels) {
      if (a.rank() > 3 || b.rank() > 3) continue;
      bool want = oracle::morphism_exists(oracle::bits_of(a), oracle::bits_of(b));
      ASSERT_EQ(is_morphism(a, b), want) << a.to_string() << " -> " << b.to_string();
      yes += want;
    }
  EXPECT_GT(yes, 0u);
}

TEST(Properties, JoinIsLeastUpperBound) {
  for (int r = 1; r <= 3; ++r) {
    auto labels = enumerate_labels(5, r);
    for (const auto& a : labels)
      for (const auto& b : labels) {
        auto j = join(a, b);
        ASSERT_TRUE(is_morphism(a, j) && is_morphism(b, j));
        for (const auto& c : labels)
          if (is_morphism(a, c) && is_morphism(b, c)) ASSERT_TRUE(is_morphism(j, c)) << c.to_string();
      }
  }
}

TEST(Properties, TranspositionsActAsSymmetricGroup) {
  for (const auto& chi : enumerate_labels(7)) {
    for (int j = 1; j <= 8; ++j) {
      EXPECT_EQ(transpose_action(transpose_action(chi, j), j), chi);
      auto l = transpose_action(transpose_action(transpose_action(chi, j), j + 1), j);
      auto r = transpose_action(transpose_action(transpose_action(chi, j + 1), j), j + 1);
      EXPECT_EQ(l, r);
      for (int k = j + 2; k <= 9; ++k)
        EXPECT_EQ(transpose_action(transpose_action(chi, j), k), transpose_action(transpose_action(chi, k), j));
      EXPECT_EQ(transpose_action(chi, j).rank(), chi.rank());
    }
  }
}

TEST(Properties, FromEllValidatesExactlyTheEllInequality) {
  oracle::Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    int N = oracle::uniform(rng, 1, 7);
    auto ell = oracle::random_raw_ell(rng, N, N + 1);
    bool ok = true;
    for (int n = 0; n <= N && ok; ++n)
      if (ell[static_cast<std::size_t>(n)] < n || (n > 0 && ell[static_cast<std::size_t>(n)] > ell[static_cast<std::size_t>(n - 1)] + 1))
        ok = false;
    EXPECT_EQ(!first_ell_violation(ell, N).has_value(), ok);
    if (ok) EXPECT_TRUE(validate(from_ell(ell, N)).valid);
    else EXPECT_THROW(from_ell(ell, N), PreconditionError);
  }
}

TEST(Properties, RandomStructuresAreValid) {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = oracle::random_scs(rng, oracle::uniform(rng, 1, 6));
    auto r = validate(s);
    ASSERT_TRUE(r.valid) << (r.violations.empty() ? "" : r.violations[0].detail);
    EXPECT_TRUE(check_tower(from_scs<Rational>(s)).all_hold());
  }
}

TEST(Properties, EpsilonLemma) {
  oracle::Rng rng(2024);
  std::size_t evaluated = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto s = oracle::random_scs(rng, oracle::uniform(rng, 1, 7));
    ASSERT_TRUE(check_epsilon_lemma(s).all_hold()) << trial;
    for (std::size_t y = 0; y < s.size(); ++y) {
      if (s.level(y) > s.max_level() - 2) continue;
      for (int j = 0; j < s.max_level(); ++j) {
        auto img = s.apply(j, y);
        ASSERT_TRUE(img);
        if (s.level(*img) > s.max_level() - 1) continue;
        ASSERT_EQ(raw_label(s, *img), insert_zero_bits(raw_label(s, y), j)) << trial << " y=" << y << " j=" << j;
        ASSERT_EQ(oracle::bits_of(normal_label(s, y)), raw_label(s, y));
        ++evaluated;
      }
    }
  }
  EXPECT_GT(evaluated, 1000u);
}

TEST(Properties, SaturationMatchesNormalLabelLevels) {
  oracle::Rng rng(17);
  int saturated = 0, unsaturated = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto s = oracle::random_scs(rng, oracle::uniform(rng, 1, 7));
    bool by_label = true;
    for (std::size_t y = 0; y < s.size(); ++y)
      if (s.level(y) <= s.max_level() - 1 && s.level(y) > normal_label(s, y).level()) by_label = false;
    bool sat = all_saturated(s);
    ASSERT_EQ(sat, by_label) << trial;
    (sat ? saturated : unsaturated)++;
  }
  EXPECT_GT(saturated, 0);
  EXPECT_GT(unsaturated, 0);
}

TEST(Properties, SaturateIsIdempotentAndMonotone) {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = oracle::random_scs(rng, oracle::uniform(rng, 1, 7));
    auto once = saturate(s);
    if (!once.caveats.empty()) continue;
    const auto& t = once.scs;
    ASSERT_TRUE(validate(t).valid) << trial;
    ASSERT_TRUE(all_saturated(t)) << trial;
    for (std::size_t x = 0; x < s.size(); ++x) {
      EXPECT_LE(t.level(x), s.level(x));
      for (int i = 0; i < s.max_level(); ++i)
        if (s.level(x) <= s.max_level() - 1) EXPECT_EQ(t.apply(i, x), s.apply(i, x));
    }
    auto twice = saturate(t).scs;
    for (std::size_t x = 0; x < t.size(); ++x) EXPECT_EQ(twice.level(x), t.level(x));
  }
}

TEST(Properties, ToyDeFinettiOnEllFamilies) {
  oracle::Rng rng(31);
  int converse = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int N = oracle::uniform(rng, 1, 7);
    auto ell = oracle::random_ell(rng, N);
    auto s = from_ell(ell, N);
    auto o = ell_oracle(ell, N);
    auto rep = check_toy_definetti(s);
    ASSERT_TRUE(rep.implications_hold) << trial;
    ASSERT_TRUE(rep.characterization_holds) << trial;
    converse += !rep.converse_failures.empty();
    for (const auto& l : rep.levels) {
      if (l.n > N - 1) continue;
      EXPECT_EQ(l.saturated_below_up_to_n, o.saturated_up_to(l.n)) << trial << " n=" << l.n;
      EXPECT_EQ(l.all_shifts_map_d_n, o.shifts_innovation(l.n)) << trial << " n=" << l.n;
      EXPECT_EQ(o.saturated_up_to(l.n), o.shifts_innovation(l.n)) << trial << " n=" << l.n;
    }
    auto trep = check_toy_definetti(from_scs<Rational>(s));
    ASSERT_TRUE(trep.implications_hold && trep.characterization_holds && trep.projection_identity_holds) << trial;
    ASSERT_EQ(trep.levels.size(), rep.levels.size());
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
      EXPECT_EQ(trep.levels[i].saturated_below_up_to_n, rep.levels[i].saturated_below_up_to_n);
      EXPECT_EQ(trep.levels[i].all_shifts_map_d_n, rep.levels[i].all_shifts_map_d_n);
      EXPECT_EQ(trep.levels[i].top_shift_maps_d_n, rep.levels[i].top_shift_maps_d_n);
    }
  }
  EXPECT_GT(converse, 0);
}

TEST(Properties, CohomologyMatchesEllOracle) {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 120; ++trial) {
    int N = oracle::uniform(rng, 1, 7);
    auto ell = oracle::random_ell(rng, N);
    auto o = ell_oracle(ell, N);
    auto c = build_complex(from_ell(ell, N));
    for (int n = -1; n + 1 <= N - 1; ++n) ASSERT_TRUE((c.coboundary(n + 1) * c.coboundary(n)).is_zero(0));
    for (int n = -1; n <= N - 1; ++n) {
      ASSERT_EQ(oracle::rank(c.coboundary(n)), oracle::rank(o.coboundary(n))) << trial << " n=" << n;
      // Sign conventions do not change ranks.
      ASSERT_EQ(oracle::rank(c.coboundary(n).scaled(Rational(-1))), oracle::rank(o.coboundary(n)));
    }
    auto rep = cohomology(c);
    for (const auto& l : rep.levels) {
      ASSERT_EQ(l.dim_cohomology, o.cohomology_dim(l.k)) << trial << " k=" << l.k;
      ASSERT_EQ(l.dim_cocycles - l.dim_coboundaries, l.dim_cohomology);
      ASSERT_TRUE(linalg::contains(l.cocycles, l.coboundaries));
    }
  }
}

TEST(Properties, SaturatedStructuresHaveTrivialCohomology) {
  oracle::Rng rng(43);
  int tested = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto s = oracle::random_scs(rng, oracle::uniform(rng, 1, 5));
    auto sat = saturate(s);
    if (!sat.caveats.empty()) continue;
    auto c = build_complex(sat.scs);
    ASSERT_TRUE(cohomology(c).trivial()) << trial;
    auto id = check_cocycle_identities(c);
    const Check* f = id.first_failure();
    ASSERT_EQ(f, nullptr) << trial << ": " << (f ? f->name : "");
    for (int k = 0; k <= c.max_level() - 1; ++k)
      if (explicit_formula_applies(c, k))
        ASSERT_TRUE(linalg::same_span(explicit_cocycles(c, k), cohomology(c).levels[static_cast<std::size_t>(k + 1)].cocycles));
    ++tested;
  }
  EXPECT_GT(tested, 50);
}

TEST(Properties, MinimalNormalExtension) {
  oracle::Rng rng(53);
  int extended = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto s = oracle::random_scs(rng, oracle::uniform(rng, 1, 5));
    auto ec = equivalence_classes(s);
    bool known = true;
    for (auto& l : normal_labels(s).labels) known = known && l.has_value();
    if (!ec.decided() || !known) {
      EXPECT_THROW(minimal_normal_extension(s), TruncationError);
      continue;
    }
    auto ext = minimal_normal_extension(s);
    ASSERT_TRUE(validate(ext.scs).valid) << trial;
    ASSERT_TRUE(is_normal(ext.scs)) << trial;
    ASSERT_TRUE(all_saturated(ext.scs)) << trial;
    std::set<std::size_t> image(ext.embedding.begin(), ext.embedding.end());
    ASSERT_EQ(image.size(), s.size());
    for (std::size_t x = 0; x < s.size(); ++x)
      for (int i = 0; i < s.max_level(); ++i)
        if (auto y = s.apply(i, x)) ASSERT_EQ(ext.scs.apply(i, ext.embedding[x]), std::optional<std::size_t>(ext.embedding[*y]));
    // Labels inside one class are distinct.
    ASSERT_TRUE(ec.label_collisions.empty());
    ASSERT_TRUE(is_isomorphic(minimal_normal_extension(ext.scs).scs, ext.scs)) << trial;
    ++extended;
  }
  EXPECT_GT(extended, 50);
}

TEST(Properties, LayerUnionsClassifyByMultiplicity) {
  oracle::Rng rng(59);
  for (int trial = 0; trial < 60; ++trial) {
    int N = oracle::uniform(rng, 1, 5);
    auto mult = oracle::random_multiplicities(rng, 3, 2);
    auto scs = oracle::layer_union(mult, N);
    auto inv = classify(scs);
    EXPECT_TRUE(inv.normal);
    // A rank-r root sits at level r-1; its label is computable only below the top level.
    std::map<int, int> want;
    int unknown = 0;
    for (std::size_t r = 0; r < mult.size(); ++r) {
      if (!mult[r] || static_cast<int>(r) > N + 1) continue;
      if (static_cast<int>(r) <= N) want[static_cast<int>(r)] = mult[r];
      else unknown += mult[r];
    }
    if (unknown) want[-1] = unknown;
    EXPECT_EQ(inv.layers, want) << trial;
    // Caveats come only from unknown labels or pairs whose join leaves the truncation.
    EXPECT_EQ(inv.caveats.empty(), unknown == 0 && equivalence_classes(scs).decided()) << trial;
    for (const auto& c : inv.classes) {
      if (c.rank < 0) continue;
      ASSERT_EQ(c.antichain.size(), 1u);
      EXPECT_TRUE(c.antichain[0].is_root());
    }
  }
}

TEST(Properties, AntichainsAreAntichains) {
  oracle::Rng rng(61);
  for (int trial = 0; trial < 150; ++trial) {
    auto s = oracle::random_scs(rng, oracle::uniform(rng, 1, 6));
    auto inv = classify(s);
    for (const auto& c : inv.classes) {
      if (c.rank < 0) {
        EXPECT_FALSE(inv.caveats.empty());
        continue;
      }
      ASSERT_FALSE(c.antichain.empty());
      for (const auto& a : c.antichain) {
        EXPECT_EQ(a.rank(), c.rank);
        for (const auto& b : c.antichain)
          if (!(a == b)) EXPECT_FALSE(oracle::morphism_exists(oracle::bits_of(a), oracle::bits_of(b)));
      }
      // Bounded by the number of rank-k labels in the truncation.
      EXPECT_LE(c.antichain.size(), enumerate_labels(inv.max_level, c.rank).size());
    }
  }
}

TEST(Properties, NormalityCriteriaAgree) {
  oracle::Rng rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    auto t = oracle::random_normal_tower(rng, oracle::uniform(rng, 1, 4), 3, 3);
    auto r = check_normal(t);
    ASSERT_TRUE(r.normal()) << trial << " " << r.adjoint_witness << r.complement_witness << r.orthogonality_witness;
    ASSERT_TRUE(r.decomposition.all_hold()) << trial;
  }
  int non_normal = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto s = oracle::random_scs(rng, oracle::uniform(rng, 1, 5));
    auto r = check_normal(from_scs<Rational>(s));
    ASSERT_TRUE(r.agree()) << trial << " (c)=" << r.adjoint_identity << " (d)=" << r.complement_criterion
                           << " (e)=" << r.orthogonal_labels;
    non_normal += !r.normal();
  }
  EXPECT_GT(non_normal, 0);
}

TEST(Properties, SymmetricRepresentationOnNormalTowers) {
  oracle::Rng rng(71);
  for (int trial = 0; trial < 12; ++trial) {
    auto t = oracle::random_normal_tower(rng, oracle::uniform(rng, 1, 4), 2, 2);
    auto data = build_symmetric_rep(t);
    auto rep = check_symmetric_rep(data);
    const Check* c = rep.first_failure();
    ASSERT_EQ(c, nullptr) << trial << ": " << (c ? c->name + " " + c->detail : "");
    auto h = check_hessenberg(data);
    ASSERT_TRUE(h.checks.all_hold()) << trial;
    ASSERT_TRUE(h.braided_conditions_agree());
  }
}

TEST(Properties, TowerEquivalenceDecidedByRootDimensions) {
  oracle::Rng rng(73);
  int same = 0, different = 0;
  for (int trial = 0; trial < 24; ++trial) {
    int N = oracle::uniform(rng, 1, 4);
    std::vector<int> ma, mb;
    auto a = oracle::random_normal_tower(rng, N, 2, 2, &ma);
    auto b = trial % 2 ? oracle::random_normal_tower(rng, N, 2, 2, &mb)
                       : oracle::rotated<Rational>(oracle::layer_union(ma, N),
                                                   oracle::random_rotation(rng, oracle::layer_union(ma, N).size(), 4));
    auto res = tower_equivalence(a, b);
    EXPECT_EQ(res.equivalent, root_dimensions(a) == root_dimensions(b));
    if (res.equivalent) {
      ASSERT_TRUE(res.intertwiner.has_value());
      ASSERT_TRUE(res.checks.all_hold()) << trial;
      ++same;
    } else {
      ++different;
    }
  }
  EXPECT_GT(same, 0);
  EXPECT_GT(different, 0);
}

TEST(Properties, TheoremCFloat) {
  oracle::Rng rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    auto k = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    int N = oracle::uniform(rng, 1, 8);
    auto c = oracle::random_contraction(rng, k);
    auto fam = from_contraction(c, N);
    auto angle = operator_angle(fam);
    ASSERT_TRUE(angle.spreadable && angle.isometric && angle.positive && angle.contraction) << trial;
    ASSERT_TRUE(linalg::approx_equal(angle.angle, c, kDefaultTolerance)) << trial;
    auto rep = check_theorem_C(fam);
    const Check* f = rep.first_failure();
    ASSERT_EQ(f, nullptr) << trial << ": " << (f ? f->name + " residual " + std::to_string(f->residual) : "");
  }
}

TEST(Properties, TheoremCExact) {
  oracle::Rng rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = oracle::random_square_contraction(rng, static_cast<std::size_t>(oracle::uniform(rng, 1, 3)));
    auto fam = from_contraction_exact(c, oracle::uniform(rng, 1, 5));
    ASSERT_TRUE(fam.has_value());
    EXPECT_EQ(operator_angle(*fam).angle, c);
    auto rep = check_theorem_C(*fam);
    const Check* f = rep.first_failure();
    ASSERT_EQ(f, nullptr) << trial << ": " << (f ? f->name : "");
    auto t = minimal_sch(*fam);
    ASSERT_TRUE(check_tower(t).all_hold());
    auto roots = root_dimensions(t);
    for (std::size_t n = 2; n < roots.size(); ++n) EXPECT_EQ(roots[n], 0u);
  }
}

TEST(Properties, RoundTripFromTowersIsSpreadable) {
  oracle::Rng rng(89);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = oracle::random_scs(rng, oracle::uniform(rng, 2, 5));
    auto t = from_scs<Rational>(s);
    if (t.dim(0) == 0) continue;
    auto fam = roundtrip_from_sch(t);
    auto r = operator_angle(fam);
    ASSERT_TRUE(r.isometric && r.spreadable) << trial;
  }
}
