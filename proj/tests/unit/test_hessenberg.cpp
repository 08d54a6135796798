#include <gtest/gtest.h>

#include "cosimplex/error.hpp"
#include "cosimplex/hessenberg.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace cosimplex;

TEST(Hessenberg, PrototypicalTranspositions) {
  const int N = 5;
  auto data = build_symmetric_rep(from_scs<Rational>(prototypical(N)));
  ASSERT_EQ(data.count(), N);
  for (int j = 1; j <= N; ++j) {
    QMatrix want = QMatrix::identity(N + 1);
    auto a = static_cast<std::size_t>(j - 1), b = static_cast<std::size_t>(j);
    want(a, a) = want(b, b) = 0;
    want(a, b) = want(b, a) = 1;
    EXPECT_EQ(data.at(j), want) << j;
  }
  EXPECT_EQ(data.product(3, 2), QMatrix::identity(N + 1));
}

TEST(Hessenberg, SymmetricRepChecks) {
  for (auto scs : {prototypical(6), oracle::layer_union({1, 1, 1}, 4), oracle::layer_union({0, 0, 1}, 5)}) {
    auto data = build_symmetric_rep(from_scs<Rational>(scs));
    auto rep = check_symmetric_rep(data);
    const Check* c = rep.first_failure();
    EXPECT_EQ(c, nullptr) << (c ? c->name + " " + c->detail : "");
    auto h = check_hessenberg(data);
    c = h.checks.first_failure();
    EXPECT_EQ(c, nullptr) << (c ? c->name + " " + c->detail : "");
    EXPECT_TRUE(h.condition_shift_intertwines && h.condition_adjacent && h.condition_braid_on_range);
  }
}

TEST(Hessenberg, RotatedNormalTower) {
  oracle::Rng rng(11);
  auto t = oracle::random_normal_tower(rng, 4, 2, 2);
  auto data = build_symmetric_rep(t);
  EXPECT_TRUE(check_symmetric_rep(data).all_hold());
  EXPECT_TRUE(check_hessenberg(data).checks.all_hold());
}

TEST(Hessenberg, NegativeControlBreaksAllThree) {
  auto data = break_commutation(build_symmetric_rep(from_scs<Rational>(prototypical(6))));
  auto h = check_hessenberg(data);
  EXPECT_TRUE(h.braided_conditions_agree());
  EXPECT_FALSE(h.condition_shift_intertwines);
  EXPECT_FALSE(h.condition_adjacent);
  EXPECT_FALSE(h.condition_braid_on_range);
  EXPECT_FALSE(h.checks.all_hold());
  bool commutation_failed = false;
  for (const auto& c : h.checks.checks)
    if (!c.holds && c.name.find("(C)") != std::string::npos) commutation_failed = true;
  EXPECT_TRUE(commutation_failed);
}

TEST(Hessenberg, NegativeControlNeedsLevelThree) {
  EXPECT_THROW(break_commutation(build_symmetric_rep(from_scs<Rational>(prototypical(2)))), PreconditionError);
}

TEST(Hessenberg, NonNormalRejected) {
  EXPECT_THROW(build_symmetric_rep(from_scs<Rational>(load_scs("figure2.json"))), PreconditionError);
}

TEST(Hessenberg, FloatPathAgrees) {
  auto data = build_symmetric_rep(from_scs<double>(oracle::layer_union({1, 1}, 4)));
  EXPECT_TRUE(check_symmetric_rep(data).all_hold());
  EXPECT_TRUE(check_hessenberg(data).checks.all_hold());
}
