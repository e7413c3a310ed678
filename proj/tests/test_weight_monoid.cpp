#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sphere/weight_monoid.hpp"

using namespace sphere;

namespace {

WeightTuple tup(const char* diagram, std::vector<IntVec> coords) {
  auto rs = RootSystem::make(diagram);
  std::vector<Weight> ws;
  for (auto& c : coords) ws.push_back(Weight(std::move(c)));
  return WeightTuple(rs, std::move(ws));
}

}  // namespace

TEST(WeightTuple, RejectsBadGenerators) {
  auto rs = RootSystem::make("A2");
  EXPECT_THROW(WeightTuple(rs, {Weight{{0, 0}}}), std::invalid_argument);
  EXPECT_THROW(WeightTuple(rs, {Weight{{1, -1}}}), std::invalid_argument);
  EXPECT_THROW(WeightTuple(rs, {Weight{{1}}}), std::invalid_argument);
}

TEST(Freeness, Examples) {
  EXPECT_TRUE(check_free(tup("A2", {{1, 0}, {0, 1}})));
  EXPECT_FALSE(check_free(tup("A2", {{1, 0}, {2, 0}})));
  EXPECT_TRUE(check_free(tup("A3", {{1, 0, 1}, {0, 1, 0}, {1, 0, 0}})));
  EXPECT_FALSE(check_free(tup("A3", {{1, 0, 1}, {0, 1, 0}, {1, 1, 1}})));
}

TEST(Saturation, WitnessExamples) {
  auto r = is_saturated(tup("A2", {{1, 0}, {0, 1}}));
  EXPECT_TRUE(r.saturated);
  EXPECT_EQ(r.witnesses, (std::vector<int>{0, 1}));

  auto bad = is_saturated(tup("A2", {{1, 1}, {1, 0}}));
  EXPECT_FALSE(bad.saturated);
  EXPECT_EQ(bad.offending, 1);  // no private root for the second generator

  EXPECT_TRUE(is_saturated(tup("G2", {{1, 0}, {0, 1}})).saturated);
}

TEST(Saturation, PermutationInvariance) {
  std::vector<IntVec> gens = {{1, 0, 1}, {0, 2, 0}, {0, 0, 1}};
  std::sort(gens.begin(), gens.end());
  bool first = is_saturated(tup("B3", gens)).saturated;
  while (std::next_permutation(gens.begin(), gens.end()))
    EXPECT_EQ(is_saturated(tup("B3", gens)).saturated, first);
}

TEST(SaturationOracle, Examples) {
  EXPECT_TRUE(saturation_oracle(tup("A2", {{1, 0}, {0, 1}}), 4).saturated);

  auto bad = saturation_oracle(tup("A2", {{1, 1}, {1, 0}}), 4);
  EXPECT_FALSE(bad.saturated);
  ASSERT_TRUE(bad.counterexample.has_value());
  EXPECT_EQ(*bad.counterexample, (Weight{{0, 1}}));  // w2 in ZGamma but not Gamma

  EXPECT_TRUE(saturation_oracle(tup("A1", {{2}}), 6).saturated);
}

TEST(SaturationOracle, GuardsAmbientRank) {
  EXPECT_THROW(saturation_oracle(tup("A5", {{1, 0, 0, 0, 0}}), 3), std::invalid_argument);
}

TEST(SaturationOracle, DefaultBound) {
  auto t = tup("A2", {{3, 0}, {0, 2}});
  EXPECT_EQ(default_oracle_bound(t), 2 * 3 + 2);
}

TEST(Saturation, AgreesWithOracleSmallSweep) {
  // exhaustive on A2 with coordinates <= 2 and s <= 2; the full sweep is
  // in the acceptance suite
  auto rs = RootSystem::make("A2");
  std::vector<Weight> all;
  for (Int x = 0; x <= 2; ++x)
    for (Int y = 0; y <= 2; ++y)
      if (x + y > 0) all.push_back(Weight{{x, y}});
  int checked = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t j = i; j < all.size(); ++j) {
      std::vector<Weight> gens = {all[i]};
      if (j > i) gens.push_back(all[j]);
      WeightTuple t(rs, gens);
      if (!check_free(t)) continue;
      EXPECT_EQ(is_saturated(t).saturated, saturation_oracle(t, 6).saturated)
          << pretty(gens[0]) << (gens.size() > 1 ? " , " + pretty(gens[1]) : "");
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Saturation, WitnessDisjointnessShrinksSubTuples) {
  // dropping a generator from a saturated tuple strictly shrinks the
  // rational span (the witnesses are private)
  auto t = tup("B3", {{1, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  ASSERT_TRUE(is_saturated(t).saturated);
  for (int drop = 0; drop < t.size(); ++drop) {
    std::vector<Weight> rest;
    for (int i = 0; i < t.size(); ++i)
      if (i != drop) rest.push_back(t.weights[i]);
    WeightTuple sub(t.rs, rest);
    EXPECT_FALSE(sub.in_lattice(t.weights[drop]));
  }
}

TEST(ComputeSp, Examples) {
  EXPECT_EQ(compute_sp(tup("A3", {{1, 0, 0}})), (std::vector<int>{1, 2}));
  EXPECT_EQ(compute_sp(tup("A2", {{1, 0}, {0, 1}})), (std::vector<int>{}));
  EXPECT_EQ(compute_sp(tup("B3", {{0, 1, 0}})), (std::vector<int>{0, 2}));
}
