#include <gtest/gtest.h>

#include <set>

#include "cosimplex/error.hpp"
#include "cosimplex/normal_extension.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace cosimplex;

namespace {

// Embedding is injective and commutes with every evaluable shift.
void expect_sub_scs(const TruncatedSCS& in, const NormalExtension& ext) {
  const auto& out = ext.scs;
  ASSERT_EQ(ext.embedding.size(), in.size());
  std::set<std::size_t> image(ext.embedding.begin(), ext.embedding.end());
  EXPECT_EQ(image.size(), in.size());
  for (std::size_t x = 0; x < in.size(); ++x)
    for (int i = 0; i < in.max_level(); ++i) {
      auto y = in.apply(i, x);
      if (!y) continue;
      EXPECT_EQ(out.apply(i, ext.embedding[x]), std::optional<std::size_t>(ext.embedding[*y]))
          << "x=" << x << " i=" << i;
    }
}

}  // namespace

TEST(NormalExtension, EpsilonLemmaOnFixtures) {
  for (auto name : {"prototypical.json", "example2.json", "figure2.json", "ell_01.json", "example3.json"}) {
    auto rep = check_epsilon_lemma(load_scs(name));
    const Check* f = rep.first_failure();
    EXPECT_EQ(f, nullptr) << name << ": " << (f ? f->detail : "");
  }
  auto p = prototypical(5);
  auto img = p.apply(0, 2);
  ASSERT_TRUE(img);
  EXPECT_EQ(normal_label(p, *img), insert_zero(normal_label(p, 2), 0));
  EXPECT_EQ(normal_label(p, *img), Label::parse("0001"));
}

TEST(NormalExtension, ClassesPrototypical) {
  auto ec = equivalence_classes(prototypical(6));
  EXPECT_TRUE(ec.decided());
  ASSERT_EQ(ec.classes.size(), 1u);
  EXPECT_EQ(ec.classes[0].size(), 7u);
  EXPECT_EQ(ec.rank, std::vector<int>{1});
}

TEST(NormalExtension, ClassesDisjointCopies) {
  auto two = oracle::layer_union({0, 2}, 5);
  auto ec = equivalence_classes(two);
  EXPECT_TRUE(ec.decided());
  EXPECT_EQ(ec.classes.size(), 2u);
  auto inv = classify(two);
  EXPECT_TRUE(inv.normal);
  EXPECT_EQ(inv.layers, (std::map<int, int>{{1, 2}}));
}

TEST(NormalExtension, ClassesFigure2) {
  auto f = load_scs("figure2.json");
  auto ec = equivalence_classes(f);
  EXPECT_TRUE(ec.decided());
  ASSERT_EQ(ec.classes.size(), 1u);
  EXPECT_EQ(ec.classes[0], (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(ec.label_collisions.empty());
}

TEST(NormalExtension, ExtendPrototypical) {
  auto p = prototypical(6);
  auto ext = minimal_normal_extension(p);
  EXPECT_EQ(ext.scs.size(), p.size());
  expect_sub_scs(p, ext);
  EXPECT_TRUE(is_isomorphic(ext.scs, p));
}

TEST(NormalExtension, ExtendExample2) {
  auto e = load_scs("example2.json");
  auto ext = minimal_normal_extension(e);
  EXPECT_TRUE(validate(ext.scs).valid);
  EXPECT_EQ(std::set<std::size_t>(ext.layer_of.begin(), ext.layer_of.end()).size(), 1u);
  for (std::size_t n = 0; n < e.size(); ++n)
    EXPECT_EQ(ext.vertex[ext.embedding[n]], Label::from_support({static_cast<int>(n)}));
  expect_sub_scs(e, ext);
  EXPECT_TRUE(is_isomorphic(ext.scs, prototypical(6)));
  EXPECT_TRUE(is_normal(ext.scs));
  auto again = minimal_normal_extension(ext.scs);
  EXPECT_TRUE(is_isomorphic(again.scs, ext.scs));
}

TEST(NormalExtension, ExtendFigure2) {
  auto f = load_scs("figure2.json");
  EXPECT_FALSE(is_normal(f));
  auto ext = minimal_normal_extension(f);
  EXPECT_EQ(ext.scs.size(), 6u);
  EXPECT_TRUE(validate(ext.scs).valid);
  EXPECT_TRUE(is_normal(ext.scs));
  expect_sub_scs(f, ext);
  EXPECT_EQ(ext.vertex[ext.embedding[0]], Label::parse("011"));
  EXPECT_EQ(ext.vertex[ext.embedding[1]], Label::parse("101"));
  auto inv = classify(ext.scs);
  EXPECT_EQ(inv.layers, (std::map<int, int>{{2, 1}}));
}

TEST(NormalExtension, ClassifyInvariants) {
  auto inv = classify(prototypical(6));
  EXPECT_TRUE(inv.normal);
  EXPECT_EQ(inv.layers, (std::map<int, int>{{1, 1}}));
  ASSERT_EQ(inv.classes.size(), 1u);
  EXPECT_EQ(inv.classes[0].antichain, std::vector<Label>{Label::parse("1")});

  auto e = classify(load_scs("example2.json"));
  EXPECT_FALSE(e.normal);
  EXPECT_EQ(e.layers, (std::map<int, int>{{1, 1}}));
  ASSERT_EQ(e.classes.size(), 1u);
  EXPECT_EQ(e.classes[0].antichain, std::vector<Label>{Label::parse("1")});
  EXPECT_EQ(e.classes[0].generators.size(), 2u);

  auto f = classify(load_scs("figure2.json"));
  ASSERT_EQ(f.classes.size(), 1u);
  EXPECT_EQ(f.classes[0].antichain, (std::vector<Label>{Label::parse("011"), Label::parse("101")}));
}

TEST(NormalExtension, Isomorphism) {
  auto p = prototypical(6);
  auto e = load_scs("example2.json");
  EXPECT_TRUE(is_isomorphic(p, saturate(e).scs));
  EXPECT_FALSE(is_isomorphic(p, e));
  EXPECT_TRUE(is_isomorphic(e, e));
  EXPECT_FALSE(is_isomorphic(prototypical(5), prototypical(6)));
  // Relabelling ids does not matter.
  auto ids = oracle::layer_union({0, 1}, 6);
  EXPECT_TRUE(is_isomorphic(ids, p));
}

TEST(NormalExtension, DistinctRootsGiveDistinctClasses) {
  TruncatedSCS s(1);
  auto a = s.add_element(0, 0), b = s.add_element(1, 0), c = s.add_element(2, 1), d = s.add_element(3, 1);
  s.set_shift(0, a, c);
  s.set_shift(0, b, d);
  ASSERT_TRUE(validate(s).valid);
  auto ec = equivalence_classes(s);
  EXPECT_TRUE(ec.decided());
  EXPECT_EQ(ec.classes.size(), 2u);
  EXPECT_EQ(classify(s).layers, (std::map<int, int>{{1, 2}}));
}

TEST(NormalExtension, UnknownLabelBlocksExtension) {
  // A top-level element with no preimage has no computable normal label.
  TruncatedSCS s(1);
  s.add_element(0, 1);
  auto table = normal_labels(s);
  EXPECT_FALSE(table.labels[0].has_value());
  EXPECT_EQ(table.source[0], LabelSource::Unknown);
  EXPECT_THROW(minimal_normal_extension(s), TruncationError);
}
