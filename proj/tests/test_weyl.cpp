#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hecke;
using hecke::testing::make_tower;

TEST(FiniteWeyl, Orders) {
  const std::map<std::string, std::size_t> expected{{"A1-weight", 2}, {"A2", 6},       {"B2", 8},
                                                    {"G2", 12},       {"BnCn(3)", 48}, {"GLn(4)", 24}};
  for (const auto& [name, n] : expected) {
    auto rd = build_preset(name);
    FiniteWeylGroup w(rd);
    EXPECT_EQ(w.order(), n) << name;
    EXPECT_EQ(w.length(w.longest()), rd.positive_roots().size()) << name;
  }
}

TEST(FiniteWeyl, WordsMatchElements) {
  auto rd = build_preset("B2");
  FiniteWeylGroup w(rd);
  for (std::uint32_t g = 0; g < w.order(); ++g) {
    std::vector<std::size_t> word(w.word(g).begin(), w.word(g).end());
    EXPECT_EQ(w.from_word(word), g);
    EXPECT_EQ(word.size(), w.length(g));
    EXPECT_EQ(w.multiply(g, w.inverse(g)), 0u);
  }
}

TEST(AffineWeyl, LengthFormulaMatchesInversionCount) {
  for (const auto& name : {"A1-weight", "A1-root", "A2", "B2", "BnCn(2)", "G2", "GLn(2)"}) {
    auto t = make_tower(name);
    const auto& rd = t->rd;
    for (std::uint32_t w = 0; w < t->w0.order(); ++w)
      for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) {
          if (rd.rank() == 1 && b != 0) continue;
          AffineWeylElem g{w, rd.rank() == 1 ? Vec{a} : Vec{a, b}};
          EXPECT_EQ(t->aff.length(g), t->aff.length_by_count(g)) << name;
        }
  }
}

TEST(AffineWeyl, LengthMatchesWordDistance) {
  for (const auto& name : {"A1-weight", "A2", "B2", "BnCn(2)"}) {
    auto t = make_tower(name);
    auto dist = oracle::coxeter_distances(t->aff, 5);
    for (const auto& [g, d] : dist) EXPECT_EQ(t->aff.length(g), d) << name;
  }
}

TEST(AffineWeyl, FactorizationRoundTrip) {
  auto t = make_tower("A2");
  for (const auto& g : t->aff.elements_up_to_length(5)) {
    auto f = t->aff.factor_extended(g);
    EXPECT_EQ(t->aff.length(f.omega), 0u);
    EXPECT_EQ(f.word.size(), t->aff.length(g));
    EXPECT_EQ(t->aff.assemble(f), g);
  }
}

TEST(AffineWeyl, OmegaOrder) {
  EXPECT_EQ(make_tower("A1-weight")->aff.omega_elements().size(), 2u);
  EXPECT_EQ(make_tower("A1-root")->aff.omega_elements().size(), 1u);
  EXPECT_EQ(make_tower("A2")->aff.omega_elements().size(), 3u);
  EXPECT_EQ(make_tower("B2")->aff.omega_elements().size(), 2u);
  EXPECT_EQ(make_tower("BnCn(2)")->aff.omega_elements().size(), 1u);
}

TEST(AffineWeyl, TranslationLengthOnDominant) {
  auto t = make_tower("B2");
  Vec x{2, 1};
  ASSERT_TRUE(t->rd.is_dominant(x));
  EXPECT_EQ(t->aff.length(AffineWeylGroup::translation(x)),
            static_cast<std::size_t>(t->rd.pair_two_rho_check(x)));
}
