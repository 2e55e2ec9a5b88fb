#include <gtest/gtest.h>

#include <cmath>

#include "tgerm/cyclotomic.hpp"
#include "tgerm/polynomial.hpp"

using namespace tgerm;

TEST(Cyclotomic, RootsOfUnity) {
  const auto e = Cyclotomic::root(8, 1);
  EXPECT_EQ(e.pow(8), Cyclotomic(8, Rational(1)));
  EXPECT_EQ(e.pow(4), Cyclotomic(8, Rational(-1)));
  EXPECT_EQ(e.pow(-2), -(e * e));
  EXPECT_EQ(e.pow(-2).to_string(), "e^-2");
  EXPECT_EQ(Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2), Cyclotomic(3, Rational(-1)));
}

TEST(Cyclotomic, InverseAndDivision) {
  const auto a = Cyclotomic(5, Rational(2)) + Cyclotomic::root(5, 1);
  EXPECT_EQ(a * a.inverse(), Cyclotomic(5, Rational(1)));
  EXPECT_EQ((a * a) / a, a);
  EXPECT_ANY_THROW(Cyclotomic(5).inverse());
}

TEST(Cyclotomic, EvaluateMatchesComplex) {
  const auto e = Cyclotomic::root(12, 5);
  const auto z = e.evaluate();
  EXPECT_NEAR(z.real(), std::cos(2 * M_PI * 5 / 12), 1e-12);
  EXPECT_NEAR(z.imag(), std::sin(2 * M_PI * 5 / 12), 1e-12);
}

TEST(Cyclotomic, SqrtAndRootMultiple) {
  const auto e = Cyclotomic::root(8, 1);
  const auto s = (Cyclotomic(8, Rational(9, 4)) * e.pow(6)).sqrt();
  ASSERT_TRUE(s);
  EXPECT_EQ(*s * *s, Cyclotomic(8, Rational(9, 4)) * e.pow(6));
  const auto rm = (Cyclotomic(8, Rational(-3)) * e).as_root_multiple();
  ASSERT_TRUE(rm);
  EXPECT_EQ(Cyclotomic(8, rm->first) * Cyclotomic::root(8, rm->second), Cyclotomic(8, Rational(-3)) * e);
}

TEST(Cyclotomic, MixedOrdersPromote) {
  const Cyclotomic half(1, Rational(1, 2));
  EXPECT_EQ(half.in_field(8), Cyclotomic(8, Rational(1, 2)));
  EXPECT_EQ(half * Cyclotomic::root(8, 1), Cyclotomic::from_poly(8, {Rational(0), Rational(1, 2)}));
}

TEST(Poly, ParseAndPrint) {
  const auto p = parse_poly("x*y - t^2*u", 4, {});
  EXPECT_EQ(p.to_string(), "x*y - t^2*u");
  EXPECT_EQ(p.projective_degree(), 2);
  const auto q = parse_poly("u^(2k+1) + v", 4, {{'k', 2}});
  EXPECT_EQ(q, parse_poly("u^5 + v", 4, {}));
  EXPECT_EQ(parse_poly("(1+e)^2*z", 8, {}).to_string(), "(1 + 2*e + e^2)*z");
  EXPECT_THROW(parse_poly("x +", 4, {}), ParseError);
  EXPECT_THROW(parse_poly("x/y", 4, {}), ParseError);
  EXPECT_THROW(parse_poly("x^-1", 4, {}), ParseError);
}

TEST(Poly, Arithmetic) {
  const auto x = Poly::variable(0), y = Poly::variable(1);
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
  EXPECT_EQ((x + y).pow(3).derivative(0), (x + y).pow(2).scaled(Cyclotomic(1, Rational(3))));
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_FALSE((x * x + y).is_projectively_homogeneous());
}

TEST(Poly, SubstituteAndEvaluate) {
  const auto p = parse_poly("x*y + e*z^2", 4, {});
  std::array<Cyclotomic, 6> pt;
  for (auto& c : pt) c = Cyclotomic(4, Rational(1));
  pt[2] = Cyclotomic::root(4, 1);
  EXPECT_EQ(p.evaluate(pt), Cyclotomic(4, Rational(1)) + Cyclotomic::root(4, 3));
  EXPECT_EQ(p.with_zero({2}), parse_poly("x*y", 4, {}));
}
