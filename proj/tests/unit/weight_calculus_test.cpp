#include <gtest/gtest.h>

#include "oracles/brute_force.hpp"
#include "tgerm/weight_calculus.hpp"

using namespace tgerm;

namespace {

WeightedChart chart(std::int64_t m, std::array<std::int64_t, 4> w, std::array<std::int64_t, 4> o) {
  WeightedChart c;
  c.modulus = m;
  c.weights = w;
  c.orders = o;
  return c;
}

}  // namespace

TEST(Residue, ReducesAndCombines) {
  EXPECT_EQ(Residue(-1, 8).value(), 7);
  EXPECT_EQ((Residue(3, 8) + Residue(6, 8)).value(), 1);
  EXPECT_EQ((-Residue(3, 8)).value(), 5);
  EXPECT_EQ((Residue(3, 8) * 3).value(), 1);
  EXPECT_ANY_THROW(Residue(1, 8) + Residue(1, 4));
  EXPECT_ANY_THROW(Residue(1, 0));
}

TEST(WeightOf, Examples) {
  const auto c = chart(8, {1, 7, 5, 0}, {1, 3, 5, 4});
  EXPECT_EQ(weight_of(Monomial(1, 1, 0, 0), c).value(), 0);
  EXPECT_EQ(weight_of(Monomial(3, 0, 0, 0), c).value(), 3);
  const auto c2 = chart(8, {3, 5, 1, 0}, {1, 1, 1, 2});
  EXPECT_EQ(weight_of(Monomial(2, 0, 1, 0), c2).value(), 7);
  EXPECT_EQ(weight_of(Monomial(2, 0, 1, 0), c2).value(), oracle::wt({2, 0, 1, 0}, c2));
}

TEST(OrdOf, Examples) {
  EXPECT_EQ(ord_of(Monomial(1, 1, 0, 0), chart(4, {1, 3, 3, 2}, {1, 1, 1, 2})), 2);
  EXPECT_EQ(ord_of(Monomial(), chart(8, {1, 7, 5, 0}, {1, 3, 5, 4})), 0);
  const auto c = chart(8, {1, 7, 5, 0}, {1, 3, 5, 4});
  EXPECT_EQ(ord_of(Monomial(3, 0, 1, 0), c), 8);
  EXPECT_EQ(ord_of(Monomial(3, 0, 1, 0), c), oracle::ord({3, 0, 1, 0}, c));
}

TEST(Monomial, RejectsNegativeExponents) { EXPECT_ANY_THROW(Monomial(-1, 0, 0, 0)); }

TEST(Monomial, LexLeadingFirst) {
  EXPECT_TRUE(lex_leading_first(Monomial(2, 0, 0, 0), Monomial(1, 5, 0, 0)));
  EXPECT_FALSE(lex_leading_first(Monomial(0, 0, 1, 0), Monomial(0, 1, 0, 0)));
}

TEST(EnumerateByWeight, Examples) {
  const auto c = chart(8, {1, 7, 5, 0}, {1, 3, 5, 4});
  const auto list = enumerate_by_weight(c, Residue(3, 8), 3);
  ASSERT_FALSE(list.empty());
  EXPECT_EQ(list.front(), Monomial(3, 0, 0, 0));

  const auto c2 = chart(8, {1, 7, 1, 0}, {1, 1, 1, 2});
  const auto inv = enumerate_by_weight(c2, Residue(0, 8), 4);
  EXPECT_NE(std::find(inv.begin(), inv.end(), Monomial(1, 1, 0, 0)), inv.end());
  EXPECT_EQ(ord_of(Monomial(1, 1, 0, 0), c2), 2);

  EXPECT_TRUE(enumerate_by_weight(c, Residue(5, 8), 0).empty());
}

TEST(EnumerateByWeight, SortedAndMatchesBox) {
  const auto c = chart(6, {1, 5, 1, 0}, {1, 2, 1, 3});
  for (std::int64_t target = 0; target < 6; ++target) {
    const auto list = enumerate_by_weight(c, Residue(target, 6), 9);
    std::size_t expected = 0;
    for (const auto& e : oracle::box(c, 9, kAllVars))
      if (e != std::array<int, 4>{0, 0, 0, 0} && oracle::wt(e, c) == target) ++expected;
    EXPECT_EQ(list.size(), expected);
    const OrderThenLex less{&c};
    for (std::size_t i = 1; i < list.size(); ++i) EXPECT_TRUE(less(list[i - 1], list[i]));
  }
}

TEST(MinOrdOfWeight, Examples) {
  const auto pattern = chart(8, {1, 7, 5, 0}, {1, 3, 5, 4});
  const auto r = min_ord_of_weight(pattern, Residue(3, 8), 24);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->order, 3);
  EXPECT_EQ(r->witness, Monomial(3, 0, 0, 0));

  const auto inv = min_ord_of_weight(pattern, Residue(0, 8), 24);
  ASSERT_TRUE(inv);
  EXPECT_EQ(inv->order, 4);

  const auto q8 = chart(8, {3, 5, 1, 0}, {1, 1, 1, 2});
  const auto r2 = min_ord_of_weight(q8, Residue(7, 8), 12);
  ASSERT_TRUE(r2);
  EXPECT_EQ(r2->order, 3);
  EXPECT_EQ(r2->witness, Monomial(2, 0, 1, 0));
}

TEST(MinOrdOfWeight, ExhaustedAndUnit) {
  const auto c = chart(8, {2, 6, 4, 0}, {1, 1, 1, 2});
  EXPECT_FALSE(min_ord_of_weight(c, Residue(1, 8), 40));
  const auto u = min_ord_of_weight(c, Residue(0, 8), 10, MinOrdOptions{kAllVars, true});
  ASSERT_TRUE(u);
  EXPECT_EQ(u->order, 0);
}

TEST(MinOrdOfWeight, EveryClassReachedWhenX1IsAUnit) {
  const auto c = chart(9, {2, 7, 4, 0}, {2, 1, 3, 3});
  for (std::int64_t target = 1; target < 9; ++target)
    EXPECT_TRUE(min_ord_of_weight(c, Residue(target, 9), 9 * 3)) << target;
}

TEST(IsSimpleInvariant, Examples) {
  const auto c = chart(8, {1, 7, 1, 0}, {1, 1, 1, 2});
  EXPECT_TRUE(is_simple_invariant(Monomial(1, 1, 0, 0), c));
  EXPECT_FALSE(is_simple_invariant(Monomial(2, 2, 0, 0), c));
  EXPECT_TRUE(is_simple_invariant(Monomial(4, 0, 4, 0), c));
  EXPECT_ANY_THROW(is_simple_invariant(Monomial(1, 0, 0, 0), c));
}

TEST(VanishesOnCurve, Examples) {
  EXPECT_TRUE(vanishes_on_curve(Monomial(1, 1, 0, 0), 1, chart(8, {1, 7, 5, 0}, {1, 3, 5, 4})));
  EXPECT_FALSE(vanishes_on_curve(Monomial(1, 1, 0, 0), 1, chart(4, {1, 3, 3, 2}, {1, 1, 1, 2})));
  EXPECT_TRUE(vanishes_on_curve(Monomial(), 0, chart(4, {1, 3, 3, 2}, {1, 1, 1, 2})));
  EXPECT_ANY_THROW(vanishes_on_curve(Monomial(0, 0, 0, 1), 1, chart(4, {1, 3, 3, 2}, {1, 1, 1, 2})));
}
