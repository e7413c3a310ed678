#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sphere/root_system.hpp"

using namespace sphere;

namespace {

const char* kMatrix[] = {"A1",    "A2", "A3", "A4", "B2", "B3",   "B4",
                         "C3",    "C4", "D4", "D5", "E6", "E7",   "E8",
                         "F4",    "G2", "A1xA1", "A3xA3", "B2xB2"};

}  // namespace

TEST(Dynkin, ParseAndBounds) {
  EXPECT_EQ(DynkinDiagram::parse("a3xb2").name(), "A3xB2");
  EXPECT_EQ(DynkinDiagram::parse("E7").rank(), 7);
  EXPECT_THROW(DynkinDiagram::parse("A0"), std::invalid_argument);
  EXPECT_THROW(DynkinDiagram::parse("B1"), std::invalid_argument);
  EXPECT_THROW(DynkinDiagram::parse("D2"), std::invalid_argument);
  EXPECT_THROW(DynkinDiagram::parse("E5"), std::invalid_argument);
  EXPECT_THROW(DynkinDiagram::parse("E9"), std::invalid_argument);
  EXPECT_THROW(DynkinDiagram::parse("F5"), std::invalid_argument);
  EXPECT_THROW(DynkinDiagram::parse("G3"), std::invalid_argument);
  EXPECT_THROW(DynkinDiagram::parse("H4"), std::invalid_argument);
  EXPECT_THROW(DynkinDiagram::parse(""), std::invalid_argument);
  EXPECT_THROW(DynkinDiagram::parse("A3x"), std::invalid_argument);
}

TEST(Dynkin, LowRankCanonicalization) {
  // C2 = B2 with the two nodes exchanged, D3 = A3 with the branch node in
  // the middle; the relabeling is recorded for input coordinates
  auto c2 = DynkinDiagram::parse("C2");
  EXPECT_EQ(c2.name(), "B2");
  EXPECT_TRUE(c2.relabeled());
  EXPECT_EQ(c2.input_relabeling(), (std::vector<int>{1, 0}));

  auto d3 = DynkinDiagram::parse("D3");
  EXPECT_EQ(d3.name(), "A3");
  EXPECT_EQ(d3.input_relabeling(), (std::vector<int>{1, 0, 2}));

  EXPECT_FALSE(DynkinDiagram::parse("B2").relabeled());
}

TEST(Dynkin, Automorphisms) {
  EXPECT_EQ(DynkinDiagram::parse("A1").automorphisms().size(), 1u);
  EXPECT_EQ(DynkinDiagram::parse("A3").automorphisms().size(), 2u);
  EXPECT_EQ(DynkinDiagram::parse("B4").automorphisms().size(), 1u);
  EXPECT_EQ(DynkinDiagram::parse("D4").automorphisms().size(), 6u);
  EXPECT_EQ(DynkinDiagram::parse("D5").automorphisms().size(), 2u);
  EXPECT_EQ(DynkinDiagram::parse("E6").automorphisms().size(), 2u);
  EXPECT_EQ(DynkinDiagram::parse("E7").automorphisms().size(), 1u);
  // two isomorphic components: per-component autos times the swap
  EXPECT_EQ(DynkinDiagram::parse("A3xA3").automorphisms().size(), 8u);
  EXPECT_EQ(DynkinDiagram::parse("B2xB2").automorphisms().size(), 2u);
  EXPECT_EQ(DynkinDiagram::parse("A3xB2").automorphisms().size(), 2u);
}

TEST(RootSystem, ClassicalCountsAndReflectionOrbit) {
  for (const char* name : kMatrix) {
    auto rs = RootSystem::make(name);
    auto orbit = sphere::testing::reflection_orbit_positive_roots(*rs);
    ASSERT_EQ(rs->positive_roots().size(), orbit.size()) << name;
    for (const auto& r : rs->positive_roots())
      EXPECT_TRUE(orbit.count(r.c)) << name << " " << pretty(r);
  }
}

TEST(RootSystem, SmallClosures) {
  auto a1 = RootSystem::make("A1");
  EXPECT_EQ(a1->positive_roots().size(), 1u);
  EXPECT_EQ(pretty(a1->positive_roots()[0]), "a1");

  auto a2 = RootSystem::make("A2");
  ASSERT_EQ(a2->positive_roots().size(), 3u);
  EXPECT_TRUE(a2->is_positive_root(RootVector{{1, 1}}));

  auto g2 = RootSystem::make("G2");
  EXPECT_EQ(g2->positive_roots().size(), 6u);
  EXPECT_EQ(g2->positive_roots().back(), (RootVector{{3, 2}}));  // highest root
}

TEST(RootSystem, PairingIsKroneckerOnFundamentalWeights) {
  for (const char* name : kMatrix) {
    auto rs = RootSystem::make(name);
    for (int i = 0; i < rs->rank(); ++i)
      for (int j = 0; j < rs->rank(); ++j)
        EXPECT_EQ(rs->pairing(rs->fundamental_weight(i), j), i == j ? 1 : 0) << name;
  }
}

TEST(RootSystem, CartanPairings) {
  auto b2 = RootSystem::make("B2");
  // alpha1 long, alpha2 short
  EXPECT_EQ(b2->pairing(b2->simple_root(0), 1), -2);
  EXPECT_EQ(b2->pairing(b2->simple_root(1), 0), -1);

  auto g2 = RootSystem::make("G2");
  EXPECT_EQ(g2->pairing(g2->simple_root(1), 0), -3);
}

TEST(RootSystem, InnerProducts) {
  auto a2 = RootSystem::make("A2");
  EXPECT_EQ(a2->inner(a2->simple_root(0), a2->simple_root(0)), Rat(2));
  EXPECT_EQ(a2->inner(a2->simple_root(0), a2->simple_root(1)), Rat(-1));
  EXPECT_EQ(a2->inner(RootVector{{1, 1}}, RootVector{{0, 0}}), Rat(0));

  auto g2 = RootSystem::make("G2");
  EXPECT_LT(g2->inner(g2->simple_root(0), g2->simple_root(1)), Rat(0));
  // long roots have squared length 2 per component
  EXPECT_EQ(g2->inner(g2->simple_root(1), g2->simple_root(1)), Rat(2));
  EXPECT_EQ(g2->inner(g2->simple_root(0), g2->simple_root(0)), Rat(2, 3));

  auto b2 = RootSystem::make("B2");
  EXPECT_EQ(b2->inner(b2->simple_root(1), b2->simple_root(1)), Rat(1));
}

TEST(RootSystem, InnerAndPairingHaveTheSameSign) {
  for (const char* name : kMatrix) {
    auto rs = RootSystem::make(name);
    for (const auto& g : rs->positive_roots())
      for (int j = 0; j < rs->rank(); ++j) {
        int s1 = rs->inner(g, rs->simple_root(j)).sign();
        Int p = rs->pairing(g, j);
        int s2 = p > 0 ? 1 : (p < 0 ? -1 : 0);
        EXPECT_EQ(s1, s2) << name << " " << pretty(g) << " j=" << j;
      }
  }
}

TEST(RootSystem, Dominance) {
  auto a1 = RootSystem::make("A1");
  Weight zero{{0}}, two{{2}};
  EXPECT_TRUE(a1->dominance_leq(zero, two));  // 2w1 = a1
  EXPECT_FALSE(a1->dominance_leq(two, zero));
  EXPECT_TRUE(a1->dominance_leq(two, two));

  auto a2 = RootSystem::make("A2");
  Weight w1{{1, 0}}, w2{{0, 1}};
  EXPECT_FALSE(a2->dominance_leq(w1, w2));
  EXPECT_FALSE(a2->dominance_leq(w2, w1));

  // lambda <= lambda + alpha for every simple root
  for (const char* name : {"A3", "B3", "G2"}) {
    auto rs = RootSystem::make(name);
    Weight lam = rs->fundamental_weight(0);
    for (int j = 0; j < rs->rank(); ++j) {
      Weight mu = lam + rs->to_weight(rs->simple_root(j));
      EXPECT_TRUE(rs->dominance_leq(lam, mu)) << name;
    }
  }
}

TEST(RootSystem, DominanceIsAPartialOrder) {
  auto b2 = RootSystem::make("B2");
  std::vector<Weight> pts;
  for (Int x = 0; x <= 2; ++x)
    for (Int y = 0; y <= 2; ++y) pts.push_back(Weight{{x, y}});
  for (const auto& a : pts) {
    EXPECT_TRUE(b2->dominance_leq(a, a));
    for (const auto& b : pts) {
      if (b2->dominance_leq(a, b) && b2->dominance_leq(b, a)) {
        EXPECT_EQ(a, b);
      }
      for (const auto& c : pts) {
        if (b2->dominance_leq(a, b) && b2->dominance_leq(b, c)) {
          EXPECT_TRUE(b2->dominance_leq(a, c));
        }
      }
    }
  }
}

TEST(RootSystem, Support) {
  EXPECT_EQ(support(RootVector{{1, 2, 1}}), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(support(RootVector{{0, 0, 0}}), (std::vector<int>{}));
  EXPECT_EQ(support(RootVector{{2, 0, 2}}), (std::vector<int>{0, 2}));
}

TEST(RootSystem, LeviRestriction) {
  auto b3 = RootSystem::make("B3");
  // all nodes: identity
  auto all = b3->sub_diagram({0, 1, 2});
  EXPECT_EQ(all.diagram.name(), "B3");
  EXPECT_EQ(b3->levi_restrict(all, Weight{{1, 2, 3}}), (Weight{{1, 2, 3}}));

  auto a2part = b3->sub_diagram({0, 1});
  EXPECT_EQ(a2part.diagram.name(), "A2");
  EXPECT_EQ(b3->levi_restrict(a2part, b3->fundamental_weight(2)), (Weight{{0, 0}}));

  auto b2part = b3->sub_diagram({1, 2});
  EXPECT_EQ(b2part.diagram.name(), "B2");
  EXPECT_EQ(b3->levi_restrict(b2part, b3->fundamental_weight(0)), (Weight{{0, 0}}));
  EXPECT_EQ(b3->levi_restrict(b2part, b3->fundamental_weight(1)), (Weight{{1, 0}}));
}

TEST(RootSystem, SubDiagramClassification) {
  auto f4 = RootSystem::make("F4");
  EXPECT_EQ(f4->sub_diagram({0, 1, 2}).diagram.name(), "B3");
  EXPECT_EQ(f4->sub_diagram({1, 2, 3}).diagram.name(), "C3");
  EXPECT_EQ(f4->sub_diagram({1, 2}).diagram.name(), "B2");
  EXPECT_EQ(f4->sub_diagram({0, 1}).diagram.name(), "A2");
  EXPECT_EQ(f4->sub_diagram({0, 2}).diagram.name(), "A1xA1");

  auto e7 = RootSystem::make("E7");
  EXPECT_EQ(e7->sub_diagram({0, 1, 2, 3, 4, 5}).diagram.name(), "E6");
  EXPECT_EQ(e7->sub_diagram({1, 2, 3, 4}).diagram.name(), "D4");
  EXPECT_EQ(e7->sub_diagram({1, 2, 3, 4, 5}).diagram.name(), "D5");
  EXPECT_EQ(e7->sub_diagram({0, 2, 3, 4, 5, 6}).diagram.name(), "A6");

  auto d5 = RootSystem::make("D5");
  auto sub = d5->sub_diagram({1, 2, 3, 4});
  EXPECT_EQ(sub.diagram.name(), "D4");
  // Bourbaki order: tail, branch node, then the two leaves
  EXPECT_EQ(sub.to_parent, (std::vector<int>{1, 2, 3, 4}));
}

TEST(RootSystem, WeightRootConversion) {
  for (const char* name : kMatrix) {
    auto rs = RootSystem::make(name);
    for (const auto& g : rs->positive_roots()) {
      auto back = rs->root_coords(rs->to_weight(g));
      ASSERT_TRUE(back.has_value()) << name;
      EXPECT_EQ(*back, g) << name;
    }
    // a fundamental weight is rarely in the root lattice; w1 of A2 is not
    if (std::string(name) == "A2") {
      EXPECT_FALSE(rs->root_coords(rs->fundamental_weight(0)).has_value());
    }
  }
}
