#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tgerm/classification.hpp"

using namespace tgerm;

namespace {

bool contains(const std::vector<NormalizedGerm>& list, const NormalizedGerm& g) {
  const auto c = canonicalize(g);
  return std::any_of(list.begin(), list.end(), [&](const NormalizedGerm& x) { return x.same_data(c); });
}

std::vector<std::string> survivor_keys(const SurvivorReport& r) {
  std::vector<std::string> out;
  for (const auto& s : r.survivors) out.push_back(s.germ.describe() + " " + s.tag);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Enumerate, ContainsClassifiedGerms) {
  Caps small;
  small.order_cap = 5;
  small.pair_sum_cap = 5;
  EXPECT_TRUE(contains(enumerate_candidates(2, 2, small), quotient_4_131_germ()));
  Caps seven;
  seven.order_cap = 7;
  seven.pair_sum_cap = 8;
  const auto list = enumerate_candidates(4, 2, seven);
  EXPECT_TRUE(contains(list, pattern_one_germ(4)));
  EXPECT_TRUE(contains(list, pattern_two_germ(4)));
  EXPECT_TRUE(enumerate_candidates(1, 1).empty());
}

TEST(Canonicalize, Examples) {
  const NormalizedGerm swapped(4, 2, Series::Main, {7, 1, 5, 0}, {3, 1, 5, 4});
  const auto c = canonicalize(swapped);
  EXPECT_EQ(c.weights(), (NormalizedGerm::Quad{1, 7, 5, 0}));
  EXPECT_EQ(c.orders(), (NormalizedGerm::Quad{1, 3, 5, 4}));
  EXPECT_TRUE(canonicalize(c).same_data(c));
  const NormalizedGerm a(2, 4, Series::Main, {3, 5, 1, 0}, {1, 1, 1, 2});
  const NormalizedGerm b(2, 4, Series::Main, {5, 3, 7, 0}, {1, 1, 1, 2});
  EXPECT_TRUE(canonicalize(a).same_data(canonicalize(b)));
}

TEST(MatchPattern, Tags) {
  EXPECT_EQ(match_theorem_pattern(quotient_8_germ(1)), "main-2.(i)");
  EXPECT_EQ(match_theorem_pattern(quotient_8_germ(3)), "main-2.(ii)");
  EXPECT_EQ(match_theorem_pattern(pattern_one_germ(4)), "main-1.(iv)");
  EXPECT_EQ(match_theorem_pattern(pattern_two_germ(4)), "main-1.(v)");
  EXPECT_EQ(match_theorem_pattern(quotient_4_131_germ()), "main-1.(iii)");
}

TEST(Classify, FourTwoPatterns) {
  Caps caps;
  caps.order_cap = 12;
  const auto r = classify(4, 2, FilterMode::Binomial, caps);
  EXPECT_TRUE(r.inconclusive.empty());
  std::vector<NormalizedGerm> high;
  for (const auto& s : r.survivors)
    if (s.germ.order(2) > 4) high.push_back(s.germ);
  ASSERT_EQ(high.size(), 2u);
  EXPECT_TRUE(contains(high, pattern_one_germ(4)));
  EXPECT_TRUE(contains(high, pattern_two_germ(4)));
}

TEST(Classify, EmptyCells) {
  for (std::int64_t mbar = 1; mbar <= 3; ++mbar) EXPECT_TRUE(classify(mbar, 3, FilterMode::Strict).survivors.empty());
  EXPECT_TRUE(classify(1, 4, FilterMode::Strict).survivors.empty());
}

TEST(Classify, StrictContainsBinomial) {
  for (auto [mbar, d] : {std::pair<std::int64_t, std::int64_t>{2, 2}, {2, 4}, {3, 2}, {4, 2}}) {
    const auto strict = survivor_keys(classify(mbar, d, FilterMode::Strict));
    const auto binom = survivor_keys(classify(mbar, d, FilterMode::Binomial));
    EXPECT_TRUE(std::includes(strict.begin(), strict.end(), binom.begin(), binom.end())) << mbar << "," << d;
  }
}

TEST(Classify, SurvivorsAreConsistent) {
  for (auto [mbar, d] : {std::pair<std::int64_t, std::int64_t>{2, 2}, {2, 4}, {4, 2}, {6, 2}}) {
    for (const auto& s : classify(mbar, d, FilterMode::Binomial).survivors) {
      EXPECT_EQ(((s.germ.order(2) - 1) % mbar + mbar) % mbar, 0) << s.germ.describe();
      EXPECT_TRUE(s.global.budget_ok) << s.germ.describe();
    }
  }
}

TEST(Classify, OrderIndependent) {
  auto list = enumerate_candidates(2, 4);
  const auto a = survivor_keys(classify_candidates(2, 4, list, FilterMode::Binomial));
  std::mt19937_64 rng(7);
  std::shuffle(list.begin(), list.end(), rng);
  const auto b = survivor_keys(classify_candidates(2, 4, list, FilterMode::Binomial));
  EXPECT_EQ(a, b);
}

TEST(Classify, TwoFourCertificate) {
  const auto r = classify(2, 4, FilterMode::Binomial);
  ASSERT_EQ(r.survivors.size(), 1u);
  EXPECT_EQ(r.survivors[0].tag, "main-2.(ii)");
  const auto shape = canonicalize(quotient_8_germ(1));
  const auto it = std::find_if(r.excluded.begin(), r.excluded.end(),
                               [&](const Exclusion& e) { return canonicalize(e.germ).same_data(shape); });
  ASSERT_NE(it, r.excluded.end());
  std::string all;
  for (const auto& l : it->certificate.lines) all += l + "\n";
  EXPECT_NE(all.find("min V = 9"), std::string::npos) << all;
  EXPECT_NE(all.find("i_P = 4"), std::string::npos) << all;
  EXPECT_NE(all.find("budget 5 > 4"), std::string::npos) << all;
}

TEST(FilterMode, Parse) {
  EXPECT_EQ(parse_filter_mode("strict"), FilterMode::Strict);
  EXPECT_EQ(parse_filter_mode("binomial-jacobian"), FilterMode::Binomial);
  EXPECT_FALSE(parse_filter_mode("fast"));
}
