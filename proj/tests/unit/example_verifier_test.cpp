#include <gtest/gtest.h>

#include <random>

#include "oracles/brute_force.hpp"
#include "tgerm/example_verifier.hpp"

using namespace tgerm;

namespace {

ProjectivePoint point(int n, std::array<int, 4> x) {
  ProjectivePoint p;
  for (int i = 0; i < 4; ++i) p.coords[static_cast<std::size_t>(i)] = Cyclotomic(n, Rational(x[static_cast<std::size_t>(i)]));
  p.uv = {Cyclotomic(n), Cyclotomic(n)};
  return p;
}

}  // namespace

TEST(Families, BuiltinsValidate) {
  for (const auto& name : builtin_example_names()) {
    const auto f = builtin_example(name);
    EXPECT_NO_THROW(validate_family(f)) << name;
    for (const auto& g : f.generators) EXPECT_EQ(apply_action_power(g, f.action, f.order), g) << name;
  }
  EXPECT_THROW(builtin_example("nope"), FamilyError);
  EXPECT_THROW(builtin_example("cAx4-family", 0), FamilyError);
}

TEST(Equivariance, EllipticScalars) {
  const auto f = builtin_example("elliptic-A3");
  const auto r = check_ideal_equivariance(f);
  ASSERT_TRUE(r.ok);
  const auto e = Cyclotomic::root(8, 1);
  EXPECT_EQ(r.scalars[0][1], e.pow(-2));
  EXPECT_EQ(r.scalars[1][0], -(e * e));
  EXPECT_TRUE(r.invertible);
  EXPECT_TRUE(r.order_identity);
}

TEST(Equivariance, NumericCrossCheck) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (const auto& name : builtin_example_names()) {
    const auto f = builtin_example(name);
    const auto r = check_ideal_equivariance(f);
    ASSERT_TRUE(r.ok) << name;
    oracle::CPoint x;
    for (auto& v : x) v = {g(rng), g(rng)};
    const auto y = oracle::act(f.action, x);
    for (std::size_t a = 0; a < f.generators.size(); ++a) {
      std::complex<double> rhs = 0;
      for (std::size_t b = 0; b < f.generators.size(); ++b) rhs += r.scalars[a][b].evaluate() * oracle::eval(f.generators[b], x);
      EXPECT_NEAR(std::abs(oracle::eval(f.generators[a], y) - rhs), 0, 1e-9) << name;
    }
  }
}

TEST(Equivariance, BrokenFamilyDetected) {
  auto f = builtin_example("two-nodes");
  f.generators[0] = f.generators[0] + parse_poly("x*t", f.order, {});
  EXPECT_FALSE(check_ideal_equivariance(f).ok);
}

TEST(Fiber, Counts) {
  EXPECT_EQ(central_fiber_components(builtin_example("elliptic-A3")).count(), 4u);
  const auto mf = central_fiber_components(builtin_example("multiple-fiber"));
  EXPECT_EQ(mf.count(), 1u);
  EXPECT_FALSE(mf.multiplicity_notes.empty());
  EXPECT_EQ(central_fiber_components(builtin_example("two-nodes")).count(), 1u);
  EXPECT_EQ(central_fiber_components(builtin_example("cyclic-quotient-A1")).count(), 2u);
}

TEST(Fiber, ComponentsLieOnFiber) {
  const auto f = builtin_example("elliptic-A3");
  for (const auto& c : central_fiber_components(f).components) {
    EXPECT_EQ(c.dimension, 1);
    EXPECT_EQ(c.equations.size(), 2u);
  }
}

TEST(Fiber, UnsupportedShape) {
  const std::vector<Poly> cubic{parse_poly("x^3 + y^3 + z^3", 1, {})};
  EXPECT_THROW(central_fiber_components(cubic), UnsupportedShape);
}

TEST(FixedPoints, EllipticQ) {
  const auto f = builtin_example("elliptic-A3");
  const auto r = fixed_points_check(f, {FixedCandidate{"Q", point(8, {0, 0, 0, 1}), 1}});
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_TRUE(r.candidates[0].fixed);
  EXPECT_TRUE(r.candidates[0].on_family);
  EXPECT_EQ(r.candidates[0].jacobian_rank, 2);
  const auto not_fixed = fixed_points_check(f, {FixedCandidate{"P", point(8, {1, 0, 0, 0}), 1}});
  EXPECT_FALSE(not_fixed.candidates[0].fixed);
}

TEST(FixedPoints, MultipleFiberDivisor) {
  const auto f = builtin_example("multiple-fiber");
  const auto r = fixed_points_check(f, {FixedCandidate{"t=0", HyperplaneTag{3}, 1}});
  EXPECT_TRUE(r.candidates[0].fixed);
  EXPECT_TRUE(r.candidates[0].on_family);
  const auto x = fixed_points_check(f, {FixedCandidate{"x=0", HyperplaneTag{0}, 1}});
  EXPECT_FALSE(x.candidates[0].fixed);
}

TEST(ParseFamily, RoundTripsBuiltinShape) {
  const std::string text =
      "name toy\norder 2\ngen x*y - z^2\ngen t^2*u - x^2\n"
      "row -1, 0, 0, 0\nrow 0, -1, 0, 0\nrow 0, 0, 1, 0\nrow 0, 0, 0, 1\n"
      "fixed point 0, 0, 1, 0; 0, 0\n";
  const auto f = parse_family(text);
  EXPECT_EQ(f.name, "toy");
  EXPECT_EQ(f.generators.size(), 2u);
  EXPECT_TRUE(check_ideal_equivariance(f).ok);
  EXPECT_THROW(parse_family("order 2\nrow 1, 0, 0\n"), ParseError);
  EXPECT_THROW(parse_family(text + "gen t*u - x^2\n"), FamilyError);
  EXPECT_ANY_THROW(parse_family("order 2\ngen x +\n"));
}
