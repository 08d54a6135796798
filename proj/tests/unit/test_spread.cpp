#include <gtest/gtest.h>

#include "cosimplex/error.hpp"
#include "cosimplex/spread.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace cosimplex;

namespace {

Rational q(long p, long r) {
  Rational x(p, r);
  x.canonicalize();
  return x;
}

// (1, -1, ..., -1, k+1, 0, ...) over coordinates -1..N; k = 0 gives (1, 1, 0, ...).
QMatrix l2_innovation(int k, int N) {
  QMatrix v(static_cast<std::size_t>(N + 2), 1);
  v(0, 0) = 1;
  for (int j = 0; j < k; ++j) v(static_cast<std::size_t>(j + 1), 0) = -1;
  v(static_cast<std::size_t>(k + 1), 0) = k + 1;
  return v;
}

QMatrix diag(std::initializer_list<Rational> d) {
  QMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (const auto& x : d) m(i, i) = x, ++i;
  return m;
}

}  // namespace

TEST(Spread, L2Angle) {
  auto fam = l2_example(5);
  auto rep = operator_angle(fam);
  EXPECT_TRUE(rep.isometric && rep.spreadable && rep.positive && rep.contraction);
  EXPECT_EQ(rep.angle, QMatrix{{q(1, 2)}});
}

TEST(Spread, L2Innovations) {
  const int N = 6;
  auto t = minimal_sch(l2_example(N));
  EXPECT_TRUE(check_tower(t).all_hold());
  EXPECT_EQ(t.dim(-1), 0u);
  for (int k = 0; k <= N; ++k) {
    ASSERT_EQ(t.innovation(k).cols(), 1u) << k;
    EXPECT_TRUE(linalg::same_span(t.innovation(k), l2_innovation(k, N))) << k;
  }
  auto roots = root_dimensions(t);
  EXPECT_EQ(roots[1], 1u);
  for (std::size_t n = 2; n < roots.size(); ++n) EXPECT_EQ(roots[n], 0u) << n;
}

TEST(Spread, L2ShiftCoefficients) {
  const int N = 4;
  auto t = minimal_sch(l2_example(N));
  auto img = t.apply(0, l2_innovation(1, N));
  auto basis = QMatrix::hcat(QMatrix::hcat(l2_innovation(0, N), l2_innovation(1, N)), l2_innovation(2, N));
  auto coeff = linalg::solve(basis, img);
  ASSERT_TRUE(coeff.has_value());
  EXPECT_EQ((*coeff)(0, 0), q(1, 2));
  EXPECT_EQ((*coeff)(1, 0), q(-1, 6));
  EXPECT_EQ((*coeff)(2, 0), q(2, 3));
}

TEST(Spread, L2TheoremC) {
  auto rep = check_theorem_C(l2_example(5));
  const Check* c = rep.first_failure();
  EXPECT_EQ(c, nullptr) << (c ? c->name : "");
}

TEST(Spread, ExactContraction) {
  auto c = diag({q(9, 25), q(16, 25)});
  auto fam = from_contraction_exact(c, 5);
  ASSERT_TRUE(fam.has_value());
  auto rep = operator_angle(*fam);
  EXPECT_TRUE(rep.spreadable && rep.isometric);
  EXPECT_EQ(rep.angle, c);
  EXPECT_TRUE(check_theorem_C(*fam).all_hold());
  EXPECT_FALSE(from_contraction_exact(diag({q(1, 4)}), 3).has_value());
  EXPECT_FALSE(from_contraction_exact(QMatrix{{1, 1}, {1, 1}}, 3).has_value());
}

TEST(Spread, ExtremeContractions) {
  auto zero = from_contraction_exact(QMatrix(2, 2), 4);
  ASSERT_TRUE(zero);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < i; ++j)
      EXPECT_TRUE((zero->isometries[static_cast<std::size_t>(i)].transpose() * zero->isometries[static_cast<std::size_t>(j)]).is_zero(0));
  auto one = from_contraction_exact(QMatrix::identity(2), 4);
  ASSERT_TRUE(one);
  for (const auto& m : one->isometries) EXPECT_EQ(m, one->isometries[0]);
  // Saturated minimal tower: C is a projection and the check is exercised.
  auto rep = check_theorem_C(*one);
  EXPECT_TRUE(rep.all_hold());
}

TEST(Spread, FloatContraction) {
  DMatrix c{{0.25}};
  auto fam = from_contraction(c, 4);
  auto rep = operator_angle(fam);
  EXPECT_TRUE(rep.spreadable);
  EXPECT_NEAR(rep.angle(0, 0), 0.25, kDefaultTolerance);
  EXPECT_NEAR(fam.isometries[2](3, 0), std::sqrt(3.0) / 2, kDefaultTolerance);
  EXPECT_THROW(from_contraction(DMatrix{{1.5}}, 3), PreconditionError);
  EXPECT_THROW(from_contraction(DMatrix{{-0.1}}, 3), PreconditionError);
}

TEST(Spread, PerturbedFamilyRejected) {
  auto fam = l2_example(4);
  // Replace x_2 by a vector with a different angle to x_0 and x_1 but the same norm.
  QMatrix x(fam.ambient_dim, 1);
  x(0, 0) = 0;
  x(3, 0) = 1;
  x(4, 0) = 1;
  fam.isometries[2] = x;
  auto rep = operator_angle(fam);
  EXPECT_FALSE(rep.spreadable);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_EQ(rep.witness->second, 2);
}

TEST(Spread, RoundTrips) {
  auto proto = roundtrip_from_sch(from_scs<Rational>(prototypical(5)));
  auto r = operator_angle(proto);
  EXPECT_TRUE(r.spreadable);
  EXPECT_TRUE(r.angle.is_zero(0));

  auto fam = roundtrip_from_sch(minimal_sch(l2_example(5)));
  auto a = operator_angle(fam);
  EXPECT_TRUE(a.spreadable);
  EXPECT_EQ(a.angle, QMatrix{{q(1, 2)}});

  oracle::Rng rng(3);
  auto c = oracle::random_contraction(rng, 3);
  auto back = operator_angle(from_contraction(c, 4));
  EXPECT_TRUE(linalg::approx_equal(back.angle, c, kDefaultTolerance));
}

TEST(Spread, Equivalence) {
  auto a = *from_contraction_exact(diag({q(9, 25)}), 3);
  auto b = *from_contraction_exact(diag({q(9, 25)}), 3);
  auto yes = family_equivalence(a, b);
  EXPECT_TRUE(yes.equivalent);
  EXPECT_TRUE(yes.exact_decision);
  EXPECT_TRUE(yes.checks.all_hold());

  auto c = *from_contraction_exact(diag({q(16, 25)}), 3);
  EXPECT_FALSE(family_equivalence(a, c).equivalent);

  auto quarter = from_contraction(DMatrix{{0.25}}, 3);
  auto half = from_contraction(DMatrix{{0.5}}, 3);
  EXPECT_FALSE(family_equivalence(quarter, half).equivalent);

  auto l2 = cast_family<double>(l2_example(3));
  auto res = family_equivalence(l2, half);
  EXPECT_TRUE(res.equivalent);
  ASSERT_TRUE(res.intertwiner.has_value());
  EXPECT_TRUE(res.checks.all_hold());
}

TEST(Spread, CharacteristicPolynomial) {
  QMatrix m(2, 2);
  m(0, 0) = 2, m(0, 1) = 1, m(1, 0) = 1, m(1, 1) = 2;
  EXPECT_EQ(characteristic_polynomial(m), (std::vector<Rational>{1, -4, 3}));
  EXPECT_EQ(characteristic_polynomial(QMatrix::identity(3)), (std::vector<Rational>{1, -3, 3, -1}));
}
