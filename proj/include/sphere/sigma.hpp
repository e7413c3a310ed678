#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "sphere/sphsys.hpp"
#include "sphere/weight_monoid.hpp"

namespace sphere {

struct FilterStep {
  std::string rule;
  bool pass;
  std::string detail;
};

struct CandidateTrace {
  CandidateRoot cand;
  bool pass = true;
  std::vector<FilterStep> steps;
};

namespace detail {

/// Nonzero restrictions of the tuple to one diagram component, as local
/// coordinate vectors.
inline std::vector<IntVec> component_restrictions(const WeightTuple& t,
                                                  const DynkinComponent& c) {
  std::vector<IntVec> out;
  for (const auto& lam : t.weights) {
    IntVec loc(lam.w.begin() + c.first, lam.w.begin() + c.first + c.rank);
    bool zero = std::all_of(loc.begin(), loc.end(), [](Int x) { return x == 0; });
    if (!zero) out.push_back(std::move(loc));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Apply the necessary per-candidate conditions in order, recording a
/// deterministic trace.  The first failing rule stops the chain.
inline CandidateTrace filter_candidate(const CandidateRoot& cand, const WeightTuple& t,
                                       const std::vector<int>& sp) {
  const RootSystem& rs = *t.rs;
  CandidateTrace tr;
  tr.cand = cand;
  auto in_sp = [&](int a) { return std::binary_search(sp.begin(), sp.end(), a); };
  auto step = [&](const std::string& rule, bool ok, const std::string& detail = "") {
    tr.steps.push_back({rule, ok, detail});
    if (!ok) tr.pass = false;
    return ok;
  };
  const RootVector& g = cand.vec;

  // (a) integral combination of the generators
  if (!step("in-lattice", t.in_lattice(rs.to_weight(g)),
            pretty(g) + " is not an integral combination of the generators"))
    return tr;

  // (b) support pairing: delta in Supp g with g - delta not a root forces
  // (g, delta) >= 0, and orthogonality forces delta into S^p
  {
    bool ok = true;
    std::string detail;
    for (int a : support(g)) {
      if (rs.is_root(g - rs.simple_root(a))) continue;
      Rat ip = rs.inner(g, rs.simple_root(a));
      if (ip.sign() < 0) {
        ok = false;
        detail = "(" + pretty(g) + ", a" + std::to_string(a + 1) + ") < 0";
        break;
      }
      if (ip.is_zero() && !in_sp(a)) {
        ok = false;
        detail = "a" + std::to_string(a + 1) + " orthogonal to " + pretty(g) +
                 " but not to the generators";
        break;
      }
    }
    if (!step("support-pairing", ok, detail)) return tr;
  }

  // (c) doubled simple root: one touching generator, even pairing
  if (cand.type == SupportType::A1Doubled) {
    int a = cand.local_nodes[0];
    std::vector<int> touching;
    for (int j = 0; j < t.size(); ++j)
      if (t.weights[j].w[a] != 0) touching.push_back(j);
    bool ok = touching.size() == 1 && t.weights[touching[0]].w[a] % 2 == 0;
    if (!step("doubled-parity", ok,
              touching.size() == 1 ? "pairing with the touching generator is odd"
                                   : "no unique generator touching the node"))
      return tr;
  }

  // (d) orthogonal pair: one generator carries both nodes, with equal
  // pairings, and no other generator touches either node
  if (cand.type == SupportType::A1xA1) {
    int a = cand.local_nodes[0], b = cand.local_nodes[1];
    std::vector<int> both;
    for (int j = 0; j < t.size(); ++j)
      if (t.weights[j].w[a] != 0 && t.weights[j].w[b] != 0) both.push_back(j);
    bool ok = both.size() == 1;
    std::string detail = "no unique generator touching both nodes";
    if (ok) {
      int j = both[0];
      if (t.weights[j].w[a] != t.weights[j].w[b]) {
        ok = false;
        detail = "unequal pairings on the touching generator";
      }
      for (int i = 0; i < t.size() && ok; ++i) {
        if (i == j) continue;
        if (t.weights[i].w[a] != 0 || t.weights[i].w[b] != 0) {
          ok = false;
          detail = "another generator touches one node of the pair";
        }
      }
    }
    if (!step("orthogonal-pair", ok, detail)) return tr;
  }

  // (e) axiom-S sandwich; the type-F pattern has no combinatorial sandwich
  // and is handled by rule (h) and the validator's special rule
  {
    bool ok = true;
    std::string detail;
    if (cand.type == SupportType::F4) {
      detail = "type F deferred to rule f4-pair";
    } else {
      for (int a : detail::axiom_s_lower(rs, g))
        if (!in_sp(a)) {
          ok = false;
          detail = "lower bound node a" + std::to_string(a + 1) + " missing from S^p";
        }
      for (int a : sp)
        if (!rs.inner(g, rs.simple_root(a)).is_zero()) {
          ok = false;
          detail = "S^p node a" + std::to_string(a + 1) + " not orthogonal to the candidate";
        }
    }
    if (!step("axiom-s", ok, detail)) return tr;
  }

  // (f) no-doubling: a type-B chain with its short end in S^p deforms to
  // the doubled root instead
  if (cand.type == SupportType::Bn) {
    int short_end = cand.local_nodes.back();
    if (!step("no-doubling", !in_sp(short_end),
              "short end a" + std::to_string(short_end + 1) + " lies in S^p"))
      return tr;
  }

  // (g) the short G2 root needs the tuple (w1, w2) on its component
  if (cand.type == SupportType::G2Short) {
    const auto& comp = rs.diagram().components()[rs.diagram().component_of(cand.local_nodes[0])];
    auto restr = detail::component_restrictions(t, comp);
    std::vector<IntVec> expect = {{0, 1}, {1, 0}};
    if (!step("g2-pair", restr == expect,
              "component restriction of the tuple is not (w1, w2)"))
      return tr;
  }

  // (h) on an F4 component with restricted tuple (w4, a*w3) the whole
  // tangent space is trivial: every candidate supported there is excluded
  {
    auto supp = support(g);
    int comp_idx = rs.diagram().component_of(supp.front());
    const auto& comp = rs.diagram().components()[comp_idx];
    bool inside_f4 = comp.family == 'F';
    for (int a : supp)
      if (rs.diagram().component_of(a) != comp_idx) inside_f4 = false;
    if (inside_f4) {
      auto restr = detail::component_restrictions(t, comp);
      bool excluded = false;
      if (restr.size() == 2) {
        const IntVec w4 = {0, 0, 0, 1};
        for (int k = 0; k < 2; ++k) {
          const IntVec& other = restr[1 - k];
          if (restr[k] == w4 && other[0] == 0 && other[1] == 0 && other[3] == 0 &&
              other[2] >= 1)
            excluded = true;
        }
      }
      if (!step("f4-pair", !excluded, "component restriction of the tuple matches (w4, a*w3)"))
        return tr;
    }
  }

  return tr;
}

inline std::vector<CandidateTrace> filter_candidates(const WeightTuple& t,
                                                     const std::vector<int>& sp) {
  std::vector<CandidateTrace> traces;
  for (const auto& cand : enumerate_candidates(*t.rs))
    traces.push_back(filter_candidate(cand, t, sp));
  return traces;
}

struct AttachResult {
  enum class Status { Ok, NotFree, NotSaturated, AmbiguousMaximum };
  Status status = Status::Ok;
  std::string message;

  std::vector<int> sp;
  std::vector<CandidateTrace> trace;
  SphericalSystem system;
  ColourSet colours;
  bool unique_maximal = false;
  int dimension = 0;
  std::vector<std::vector<RootVector>> maximal_sets;  // all of them when ambiguous
};

/// The spherical system attached to a free saturated tuple: among subsets
/// of the filtered candidates, the maximal one for which (S^p, Sigma, {})
/// passes the axioms, stays inside ZGamma, satisfies no-doubling, and is
/// Gamma-compatible through its colours.  Several incomparable maxima are
/// reported, never silently resolved.
inline AttachResult attach_spherical_system(const WeightTuple& t) {
  AttachResult res;
  if (!check_free(t)) {
    res.status = AttachResult::Status::NotFree;
    res.message = "generators are linearly dependent";
    return res;
  }
  auto sat = is_saturated(t);
  if (!sat.saturated) {
    res.status = AttachResult::Status::NotSaturated;
    res.message = "no witness root for generator " + std::to_string(sat.offending + 1);
    return res;
  }
  res.sp = compute_sp(t);
  res.trace = filter_candidates(t, res.sp);

  std::vector<const CandidateRoot*> pool;
  for (const auto& tr : res.trace)
    if (tr.pass) pool.push_back(&tr.cand);
  const int m = static_cast<int>(pool.size());

  // pairwise compatibility from the axioms (Sigma1) and (Sigma2)
  auto pair_ok = [&](const CandidateRoot& x, const CandidateRoot& y) {
    const RootSystem& rs = *t.rs;
    for (const auto* p : {&x, &y}) {
      const auto* q = (p == &x) ? &y : &x;
      if (p->type == SupportType::A1Doubled) {
        Int v = rs.pairing(q->vec, p->local_nodes[0]);
        if (v > 0 || v % 2 != 0) return false;
      }
      if (p->type == SupportType::A1xA1) {
        if (rs.pairing(q->vec, p->local_nodes[0]) != rs.pairing(q->vec, p->local_nodes[1]))
          return false;
      }
    }
    return true;
  };
  std::vector<std::vector<bool>> compat(m, std::vector<bool>(m, true));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      compat[i][j] = compat[j][i] = pair_ok(*pool[i], *pool[j]);

  auto admissible = [&](const std::vector<int>& idx) {
    std::vector<RootVector> sigma;
    for (int i : idx) sigma.push_back(pool[i]->vec);
    SphericalSystem sys(t.rs, res.sp, std::move(sigma));
    if (!validate_axioms(sys).pass) return false;
    if (!check_no_doubling(sys).pass) return false;
    ColourSet cs = build_colours(sys);
    return check_gamma_compat(sys, cs, t).pass;
  };

  // depth-first enumeration with monotone pruning (pairwise compatibility
  // and linear independence survive in every superset)
  std::vector<std::vector<int>> admissible_sets;
  std::vector<int> chosen;
  RatMat span;  // row space of the chosen vectors, kept in echelon form

  auto independent_with = [&](const RootVector& v) {
    RatMat m2 = span;
    RatVec row(v.c.size());
    for (size_t i = 0; i < v.c.size(); ++i) row[i] = Rat(v.c[i]);
    m2.push_back(row);
    return static_cast<int>(rref(m2).size()) == static_cast<int>(m2.size());
  };

  std::function<void(int)> dfs = [&](int next) {
    if (next == m) {
      if (admissible(chosen)) admissible_sets.push_back(chosen);
      return;
    }
    bool ok = true;
    for (int i : chosen)
      if (!compat[i][next]) ok = false;
    if (ok && independent_with(pool[next]->vec)) {
      RatMat saved = span;
      RatVec row(pool[next]->vec.c.size());
      for (size_t i = 0; i < row.size(); ++i) row[i] = Rat(pool[next]->vec.c[i]);
      span.push_back(row);
      rref(span);
      chosen.push_back(next);
      dfs(next + 1);
      chosen.pop_back();
      span = std::move(saved);
    }
    dfs(next + 1);
  };
  dfs(0);

  // keep the maximal admissible subsets under inclusion
  std::vector<std::vector<int>> maximal;
  for (const auto& a : admissible_sets) {
    bool dominated = false;
    for (const auto& b : admissible_sets) {
      if (a.size() >= b.size() || !std::includes(b.begin(), b.end(), a.begin(), a.end()))
        continue;
      dominated = true;
      break;
    }
    if (!dominated) maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end());
  maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());

  for (const auto& idx : maximal) {
    std::vector<RootVector> sigma;
    for (int i : idx) sigma.push_back(pool[i]->vec);
    std::sort(sigma.begin(), sigma.end());
    res.maximal_sets.push_back(std::move(sigma));
  }
  if (res.maximal_sets.size() != 1) {
    res.status = AttachResult::Status::AmbiguousMaximum;
    res.message = "found " + std::to_string(res.maximal_sets.size()) +
                  " incomparable maximal admissible subsets";
    return res;
  }

  res.unique_maximal = true;
  res.system = SphericalSystem(t.rs, res.sp, res.maximal_sets[0]);
  res.colours = build_colours(res.system);
  res.dimension = static_cast<int>(res.system.sigma.size());
  if (!validate_axioms(res.system).pass)
    throw std::logic_error("attached system fails the axioms");
  return res;
}

inline int hilbert_dimension(const WeightTuple& t) {
  AttachResult r = attach_spherical_system(t);
  if (r.status != AttachResult::Status::Ok)
    throw std::invalid_argument("hilbert_dimension: " + r.message);
  return r.dimension;
}

}  // namespace sphere
