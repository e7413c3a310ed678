// Acceptance suite: one test per criterion, each printing a PASS/FAIL
// line.  Every tolerance and threshold is pinned here; nothing defers to
// later calibration.

#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "sphere/catalog_default.hpp"
#include "sphere/decompose_tree.hpp"
#include "sphere/json_io.hpp"

using namespace sphere;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << "[CRITERION " << criterion << "] " << (pass ? "PASS" : "FAIL") << " — "
            << detail << "\n";
}

WeightTuple tup(const char* diagram, std::vector<IntVec> coords) {
  auto rs = RootSystem::make(diagram);
  std::vector<Weight> ws;
  for (auto& c : coords) ws.push_back(Weight(std::move(c)));
  return WeightTuple(rs, std::move(ws));
}

/// All free tuples on `diagram` with s <= 3 generators, coordinates <= 3,
/// enumerated as unordered combinations (saturation is permutation
/// invariant, which the unit suite checks separately).
template <typename Fn>
void sweep_tuples(const char* diagram, Fn&& fn) {
  auto rs = RootSystem::make(diagram);
  const int n = rs->rank();
  std::vector<Weight> pool;
  IntVec cur(n, 0);
  while (true) {
    int k = 0;
    while (k < n && ++cur[k] > 3) cur[k++] = 0;
    if (k == n) break;
    pool.push_back(Weight(cur));
  }
  const size_t m = pool.size();
  for (size_t i = 0; i < m; ++i) {
    WeightTuple t1(rs, {pool[i]});
    fn(t1);
    for (size_t j = i + 1; j < m; ++j) {
      WeightTuple t2(rs, {pool[i], pool[j]});
      if (!check_free(t2)) continue;
      fn(t2);
      for (size_t k2 = j + 1; k2 < m; ++k2) {
        WeightTuple t3(rs, {pool[i], pool[j], pool[k2]});
        if (!check_free(t3)) continue;
        fn(t3);
      }
    }
  }
}

const char* kSweepDiagrams[] = {"A1", "A2", "A1xA1", "A3", "B2", "B3", "C3", "G2"};

}  // namespace

TEST(Acceptance, Criterion1CatalogSoundness) {
  Timer timer;
  const Catalog& cat = default_catalog();
  int systems = 0, failures = 0;
  std::vector<std::string> failing;
  for (const auto& e : cat.entries()) {
    for (const auto& pm : cat.test_instantiations(e)) {
      InstantiatedEntry inst = cat.instantiate(e, pm);
      ++systems;
      bool ax = validate_axioms(inst.system).pass;
      bool colours = true;
      try {
        build_colours(inst.system);
      } catch (const std::exception&) {
        colours = false;
      }
      bool cusp = inst.system.cuspidal();
      bool nd = check_no_doubling(inst.system).pass;
      if (!(ax && colours && cusp && nd)) {
        ++failures;
        std::string what;
        if (!ax) what += " axioms";
        if (!colours) what += " colours";
        if (!cusp) what += " cuspidality";
        if (!nd) what += " no-doubling";
        std::string params;
        for (const auto& [k, v] : pm) params += " " + k + "=" + std::to_string(v);
        failing.push_back(e.id + params + " fails" + what);
      }
      EXPECT_TRUE(ax) << e.id;
      EXPECT_TRUE(colours) << e.id;
      EXPECT_TRUE(cusp) << e.id;
      EXPECT_TRUE(nd) << e.id;
    }
  }
  double secs = timer.seconds();
  EXPECT_EQ(cat.entries().size(), 40u);
  EXPECT_LT(secs, 10.0);
  for (const auto& f : failing) std::cout << "    " << f << "\n";
  report(1, failures == 0 && secs < 10.0,
         std::to_string(systems) + " instantiations of 40 entries, " +
             std::to_string(failures) + " failures, " + std::to_string(secs) + " s");
}

TEST(Acceptance, Criterion2PinnedCases) {
  Timer total;
  bool ok = true;
  auto timed = [&](const char* label, auto&& fn) {
    Timer t;
    fn();
    double secs = t.seconds();
    EXPECT_LT(secs, 1.0) << label;
    if (secs >= 1.0) ok = false;
  };

  timed("G2", [&] {
    auto r = attach_spherical_system(tup("G2", {{1, 0}, {0, 1}}));
    ASSERT_EQ(r.status, AttachResult::Status::Ok);
    EXPECT_EQ(r.dimension, 1);
    ASSERT_EQ(r.system.sigma.size(), 1u);
    EXPECT_EQ(r.system.sigma[0], (RootVector{{1, 1}}));
    ok = ok && r.dimension == 1 && r.system.sigma[0] == (RootVector{{1, 1}});
  });
  timed("F4 (w4,w3)", [&] {
    auto r = attach_spherical_system(tup("F4", {{0, 0, 0, 1}, {0, 0, 1, 0}}));
    EXPECT_EQ(r.dimension, 0);
    ok = ok && r.dimension == 0;
  });
  timed("F4 (w4,2w3)", [&] {
    auto r = attach_spherical_system(tup("F4", {{0, 0, 0, 1}, {0, 0, 2, 0}}));
    EXPECT_EQ(r.dimension, 0);
    ok = ok && r.dimension == 0;
  });
  for (int n : {2, 3, 4}) {
    timed("B_n (w1)", [&] {
      auto rs = RootSystem::make("B" + std::to_string(n));
      IntVec w(n, 0);
      w[0] = 1;
      auto r = attach_spherical_system(WeightTuple(rs, {Weight(w)}));
      ASSERT_EQ(r.system.sigma.size(), 1u);
      EXPECT_EQ(r.system.sigma[0], RootVector(IntVec(n, 2)));
      ok = ok && r.system.sigma[0] == RootVector(IntVec(n, 2));
    });
  }
  report(2, ok, "G2, F4 x2, B2/B3/B4 pinned values, " + std::to_string(total.seconds()) + " s");
}

TEST(Acceptance, Criterion3SaturationOracleEquivalence) {
  Timer timer;
  long long tuples = 0, disagreements = 0;
  for (const char* diagram : kSweepDiagrams) {
    sweep_tuples(diagram, [&](const WeightTuple& t) {
      ++tuples;
      bool criterion = is_saturated(t).saturated;
      bool oracle = saturation_oracle(t, 6).saturated;
      if (criterion != oracle) {
        ++disagreements;
        ADD_FAILURE() << diagram << " disagreement";
      }
    });
  }
  double secs = timer.seconds();
  EXPECT_EQ(disagreements, 0);
  EXPECT_LT(secs, 300.0);
  report(3, disagreements == 0 && secs < 300.0,
         std::to_string(tuples) + " free tuples on 8 diagrams, " +
             std::to_string(disagreements) + " disagreements, " + std::to_string(secs) + " s");
}

TEST(Acceptance, Criterion4CatalogRoundTrip) {
  const Catalog& cat = default_catalog();
  int eligible = 0, agree = 0;
  std::vector<std::string> ineligible, disagreements;
  for (const auto& e : cat.entries()) {
    // minimal parameters: the admissible assignment of smallest total rank
    InstantiatedEntry inst;
    long best = 1 << 30;
    for (const auto& pm : cat.test_instantiations(e)) {
      auto cand = cat.instantiate(e, pm);
      if (cand.system.rs->rank() < best) {
        best = cand.system.rs->rank();
        inst = cand;
      }
    }
    ColourSet cs = build_colours(inst.system);
    std::vector<Weight> images;
    for (const auto& c : cs.colours) images.push_back(c.sigma_weight);
    WeightTuple t(inst.system.rs, images);
    if (!check_free(t)) {
      ineligible.push_back(e.id + " (not free)");
      continue;
    }
    if (!is_saturated(t).saturated) {
      ineligible.push_back(e.id + " (not saturated)");
      continue;
    }
    ++eligible;
    auto r = attach_spherical_system(t);
    bool same = r.status == AttachResult::Status::Ok && r.system.sp == inst.system.sp &&
                r.system.sigma == inst.system.sigma;
    if (same) {
      ++agree;
    } else {
      disagreements.push_back(e.id);
      std::cout << "    " << e.id << " attaches to a different system:\n"
                << "      entry:    " << to_json(inst.system).dump() << "\n"
                << "      attached: "
                << (r.status == AttachResult::Status::Ok ? to_json(r.system).dump() : r.message)
                << "\n";
    }
    EXPECT_TRUE(same) << e.id;
  }
  for (const auto& s : ineligible) std::cout << "    ineligible: " << s << "\n";
  report(4, agree == eligible,
         std::to_string(agree) + "/" + std::to_string(eligible) +
             " eligible entries round-trip (" + std::to_string(ineligible.size()) +
             " ineligible)");
}

TEST(Acceptance, Criterion5MultiplicityFreenessAndBounds) {
  Timer timer;
  long long attached = 0, violations = 0;
  for (const char* diagram : kSweepDiagrams) {
    sweep_tuples(diagram, [&](const WeightTuple& t) {
      if (!is_saturated(t).saturated) return;
      auto r = attach_spherical_system(t);
      if (r.status != AttachResult::Status::Ok) {
        ++violations;
        ADD_FAILURE() << diagram << ": attach failed (" << r.message << ")";
        return;
      }
      ++attached;
      const auto& sigma = r.system.sigma;
      bool ok = static_cast<int>(sigma.size()) <= t.size();
      std::set<IntVec> distinct;
      RatMat m;
      for (const auto& g : sigma) {
        if (!distinct.insert(g.c).second) ok = false;
        Int total = 0;
        for (Int x : g.c) total += x;
        if (total <= 1) ok = false;  // no simple roots
        RatVec row(g.c.size());
        for (size_t i = 0; i < g.c.size(); ++i) row[i] = Rat(g.c[i]);
        m.push_back(std::move(row));
      }
      if (rank(std::move(m)) != static_cast<int>(sigma.size())) ok = false;
      if (!ok) {
        ++violations;
        ADD_FAILURE() << diagram << ": invariant violation";
      }
    });
  }
  double secs = timer.seconds();
  EXPECT_EQ(violations, 0);
  report(5, violations == 0,
         std::to_string(attached) + " saturated tuples attached, " +
             std::to_string(violations) + " violations, " + std::to_string(secs) + " s");
}

TEST(Acceptance, Criterion6DecompositionProperties) {
  Timer timer;
  const Catalog& cat = default_catalog();
  bool ok = true;

  // quotient by the empty subset is the identity; quotient by the
  // parabolic subset Delta(S) has rank zero
  std::vector<InstantiatedEntry> samples;
  for (const char* id : {"A.2", "A.5", "B.3", "B.4", "C.6", "D.6", "F.2"}) {
    const PrimitiveEntry* e = cat.find(id);
    InstantiatedEntry inst;
    long best = 1 << 30;
    for (const auto& pm : cat.test_instantiations(*e)) {
      auto cand = cat.instantiate(*e, pm);
      if (cand.system.rs->rank() < best) {
        best = cand.system.rs->rank();
        inst = cand;
      }
    }
    samples.push_back(inst);
  }
  for (const auto& inst : samples) {
    auto cs = build_colours(inst.system);
    auto q0 = quotient(inst.system, cs, {});
    bool identity = q0.ok && q0.sigma_q == inst.system.sigma && q0.sp_q == inst.system.sp;
    EXPECT_TRUE(identity) << inst.id;
    std::vector<int> all(cs.colours.size());
    std::iota(all.begin(), all.end(), 0);
    auto cls = classify_subset(inst.system, cs, all);
    auto qp = quotient(inst.system, cs, all);
    bool parab = cls.parabolic && qp.ok && qp.xi_rank == 0 && qp.sigma_q.empty();
    EXPECT_TRUE(parab) << inst.id;
    ok = ok && identity && parab;
  }

  // products decompose with one leaf per factor, paddings shed cleanly
  {
    auto a5 = cat.instantiate("A.5", {{"n", 3}});
    auto b3 = cat.instantiate("B.3", {{"n", 3}, {"p", 2}, {"q", 1}});
    auto rs = RootSystem::make("B3xA3");
    std::vector<RootVector> sigma;
    for (const auto& g : b3.system.sigma) {
      IntVec c(6, 0);
      for (int i = 0; i < 3; ++i) c[i] = g.c[i];
      sigma.push_back(RootVector(c));
    }
    for (const auto& g : a5.system.sigma) {
      IntVec c(6, 0);
      for (int i = 0; i < 3; ++i) c[3 + i] = g.c[i];
      sigma.push_back(RootVector(c));
    }
    SphericalSystem prod(rs, {}, sigma);
    auto tree = decompose(prod, cat);
    bool good = tree.kind == DecompNode::Kind::Product && tree.leaf_count() == 2;
    EXPECT_TRUE(good);
    ok = ok && good;

    auto rs_pad = RootSystem::make("A3xA1");
    std::vector<RootVector> sig_pad;
    for (const auto& g : a5.system.sigma) {
      IntVec c(4, 0);
      for (int i = 0; i < 3; ++i) c[i] = g.c[i];
      sig_pad.push_back(RootVector(c));
    }
    SphericalSystem padded(rs_pad, {3}, sig_pad);
    auto ptree = decompose(padded, cat);
    bool pgood = ptree.kind == DecompNode::Kind::Parabolic && ptree.leaf_count() == 1 &&
                 ptree.children[0].kind == DecompNode::Kind::LeafPrimitive &&
                 ptree.children[0].leaf_ref == "A.5";
    EXPECT_TRUE(pgood);
    ok = ok && pgood;
  }

  // every catalog sample decomposes to a single primitive leaf
  for (const auto& inst : samples) {
    auto tree = decompose(inst.system, cat);
    bool leaf = tree.kind == DecompNode::Kind::LeafPrimitive && tree.leaf_ref == inst.id;
    EXPECT_TRUE(leaf) << inst.id;
    ok = ok && leaf;
  }

  double secs = timer.seconds();
  EXPECT_LT(secs, 30.0);
  report(6, ok && secs < 30.0,
         "identity/parabolic quotients, product and padding trees, " +
             std::to_string(secs) + " s");
}

TEST(Acceptance, Criterion7Determinism) {
  auto artifact = [] {
    ojson j;
    {
      auto r = attach_spherical_system(tup("G2", {{1, 0}, {0, 1}}));
      ojson run;
      run["system"] = to_json(r.system);
      ojson tr = ojson::array();
      for (const auto& c : r.trace) tr.push_back(to_json(c));
      run["trace"] = tr;
      j["g2"] = run;
    }
    {
      auto r = attach_spherical_system(tup("B4", {{1, 0, 0, 0}}));
      j["b4"] = to_json(r.system);
      j["b4_colours"] = to_json(r.colours);
    }
    {
      const Catalog& cat = default_catalog();
      ojson st = ojson::array();
      for (const auto& e : cat.entries())
        for (const auto& pm : cat.test_instantiations(e)) {
          auto inst = cat.instantiate(e, pm);
          ojson row;
          row["id"] = e.id;
          row["system"] = to_json(inst.system);
          row["K"] = inst.K;
          st.push_back(row);
        }
      j["catalog"] = st;
      auto inst = cat.instantiate("A.2", {{"n1", 3}, {"n2", 3}});
      j["tree"] = to_json(decompose(inst.system, cat));
    }
    return j.dump(2);
  };
  std::string first = artifact();
  std::string second = artifact();
  bool same = first == second;
  EXPECT_TRUE(same);
  report(7, same, "full JSON artifacts byte-identical across repeated runs (" +
                      std::to_string(first.size()) + " bytes)");
}
