#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace hecke;
using hecke::testing::make_tower;

TEST(Hecke, QuadraticRelation) {
  for (const auto& name : {"A1-root", "A2", "BnCn(2)"}) {
    auto t = make_tower(name);
    const auto& H = t->H;
    for (std::size_t i = 0; i < t->aff.nodes().size(); ++i) {
      HeckeElem s = H.basis(t->aff.nodes()[i].reflection);
      LaurentPoly q = LabelSet::mono(t->labels.q_node(i));
      HeckeElem lhs = H.mul(s - H.scalar(q), s + H.one());
      EXPECT_TRUE(lhs.is_zero()) << name << " node " << i;
    }
  }
}

TEST(Hecke, InverseOfBasis) {
  for (const auto& name : {"A1-weight", "A2", "B2", "BnCn(2)"}) {
    auto t = make_tower(name);
    for (const auto& g : t->aff.elements_up_to_length(3)) {
      HeckeElem prod = t->H.mul(t->H.basis(g), t->H.invert_basis(g));
      EXPECT_EQ(prod, t->H.one()) << name;
    }
  }
}

TEST(Hecke, BasisProductOnReducedPairs) {
  auto t = make_tower("B2");
  auto elems = t->aff.elements_up_to_length(3);
  for (const auto& a : elems)
    for (const auto& b : elems) {
      auto ab = t->aff.multiply(a, b);
      if (t->aff.length(ab) != t->aff.length(a) + t->aff.length(b)) continue;
      EXPECT_EQ(t->H.mul(t->H.basis(a), t->H.basis(b)), t->H.basis(ab));
    }
}

TEST(Hecke, Associativity) {
  auto t = make_tower("BnCn(2)");
  auto elems = t->aff.elements_up_to_length(3);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = t->H.basis(elems[pick(rng)]) + t->H.basis(elems[pick(rng)]);
    auto b = t->H.basis(elems[pick(rng)]);
    auto c = t->H.basis(elems[pick(rng)]) - t->H.basis(elems[pick(rng)]);
    EXPECT_EQ(t->H.mul(t->H.mul(a, b), c), t->H.mul(a, t->H.mul(b, c)));
  }
}

TEST(Hecke, TraceOfInverseProductMatchesFullProduct) {
  auto t = make_tower("A2");
  auto elems = t->aff.elements_up_to_length(3);
  for (const auto& a : elems)
    for (const auto& b : elems) {
      HeckeElem h = t->H.basis(a);
      EXPECT_EQ(t->H.trace_mul_basis_inverse(h, b), t->H.tau(t->H.mul_basis_inverse(h, b)));
    }
}

TEST(Hecke, ContextMismatch) {
  auto t1 = make_tower("A2");
  auto t2 = make_tower("A2");
  EXPECT_THROW(t1->H.mul(t1->H.one(), t2->H.one()), ContextMismatch);
}
