#include <gtest/gtest.h>

#include "hecke/rootdata.hpp"

using namespace hecke;

TEST(RootData, PresetRootCounts) {
  const std::map<std::string, std::size_t> expected{
      {"A1-weight", 2}, {"A1-root", 2}, {"A2", 6}, {"B2", 8}, {"C2", 8}, {"G2", 12}, {"BnCn(2)", 8}, {"BnCn(3)", 18},
      {"GLn(3)", 6}};
  for (const auto& [name, n] : expected) {
    auto rd = build_preset(name);
    EXPECT_EQ(rd.num_roots(), n) << name;
    EXPECT_EQ(rd.positive_roots().size(), n / 2) << name;
  }
}

TEST(RootData, PairingOfRootWithOwnCorootIsTwo) {
  for (const auto& name : {"A1-weight", "A1-root", "A2", "B2", "C2", "G2", "BnCn(3)", "GLn(3)"}) {
    auto rd = build_preset(name);
    for (std::size_t i = 0; i < rd.num_roots(); ++i) EXPECT_EQ(rd.pair(rd.root(i), rd.coroot(i)), 2) << name;
  }
}

TEST(RootData, NonReducedCounts) {
  // One doubled root per coroot in 2Y, positive or negative.
  auto a1 = build_preset("A1-root");
  EXPECT_EQ(a1.derived().nr.size(), 4u);
  EXPECT_EQ(a1.derived().nr_pos.size(), 2u);
  auto a1w = build_preset("A1-weight");
  EXPECT_EQ(a1w.derived().nr.size(), 2u);
  auto bc2 = build_preset("BnCn(2)");
  EXPECT_EQ(bc2.derived().nr.size(), 12u);
  EXPECT_EQ(bc2.derived().nr_pos.size(), 6u);
  auto bc3 = build_preset("BnCn(3)");
  EXPECT_EQ(bc3.derived().nr_pos.size(), 12u);
}

TEST(RootData, RejectsBadPairing) {
  EXPECT_THROW(RootDatum("bad", 1, IntMatrix::identity(1), {Vec{3}}, {Vec{1}}), DatumError);
}

TEST(RootData, RejectsMalformedJson) {
  nlohmann::json j = {{"rank", 1}, {"simple_roots", {{1}}}, {"simple_coroots", {{1}}}};
  EXPECT_THROW(RootDatum::from_json(j), DatumError);
  EXPECT_THROW(RootDatum::from_json(nlohmann::json{{"rank", 2}}), DatumError);
}

TEST(RootData, JsonRoundTrip) {
  auto rd = build_preset("B2");
  auto back = RootDatum::from_json(rd.to_json());
  EXPECT_EQ(back.num_roots(), rd.num_roots());
  EXPECT_EQ(back.simple_roots(), rd.simple_roots());
}

TEST(RootData, QMembershipAndHeight) {
  auto rd = build_preset("A1-weight");
  EXPECT_TRUE(rd.in_Q(Vec{-2}));
  EXPECT_FALSE(rd.in_Q(Vec{-1}));
  EXPECT_TRUE(rd.in_Q_minus(Vec{-4}));
  EXPECT_FALSE(rd.in_Q_minus(Vec{4}));
  EXPECT_EQ(rd.height(Vec{4}), 2);
  auto a2 = build_preset("A2");
  EXPECT_EQ(a2.height(a2.simple_roots()[0] + a2.simple_roots()[1]), 2);
}

TEST(RootData, DominantDecomposition) {
  for (const auto& name : {"A1-weight", "A2", "B2", "BnCn(2)", "GLn(2)"}) {
    auto rd = build_preset(name);
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b) {
        Vec x = rd.rank() == 1 ? Vec{a} : Vec{a, b};
        auto [y, z] = rd.dominant_decomposition(x);
        EXPECT_EQ(y - z, x);
        EXPECT_TRUE(rd.is_dominant(y)) << name;
        EXPECT_TRUE(rd.is_dominant(z)) << name;
      }
  }
}
