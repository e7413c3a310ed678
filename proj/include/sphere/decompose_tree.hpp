#pragma once

#include <string>
#include <vector>

#include "sphere/catalog.hpp"
#include "sphere/decomp.hpp"

namespace sphere {

/// Decomposition of a spherical system into primitive factors: parabolic
/// reduction to the support of Sigma, orthogonal product splitting,
/// catalog matching, and fiber-product decomposition on the remainder.
struct DecompNode {
  enum class Kind {
    Parabolic,      // one child: the system localized to Supp Sigma
    Product,        // one child per orthogonal factor
    Fiber,          // three children: quotients by Delta1, Delta2, Delta1 u Delta2
    LeafPrimitive,  // catalog entry
    LeafExternal,   // rank <= 2, external tables
    LeafRank0,      // no spherical roots: a flag factor
    LeafUnresolved  // no match and no decomposition; reported, never dropped
  };

  Kind kind;
  SphericalSystem system;
  std::vector<DecompNode> children;

  // parabolic data
  std::vector<int> kept_nodes;     // Supp Sigma in parent labels
  std::vector<int> shed_sp_nodes;  // dropped S^p padding

  // fiber data (colour ids of the parent system)
  std::vector<std::string> fiber_delta1, fiber_delta2;

  // leaf data
  std::string leaf_ref;
  ParamMap leaf_params;

  int leaf_count() const {
    if (children.empty()) return 1;
    int c = 0;
    for (const auto& ch : children) c += ch.leaf_count();
    return c;
  }
};

inline DecompNode decompose(const SphericalSystem& sys, const Catalog& catalog) {
  DecompNode node;
  node.system = sys;

  if (sys.sigma.empty()) {
    node.kind = DecompNode::Kind::LeafRank0;
    node.leaf_ref = "rank0";
    return node;
  }

  // parabolic reduction: localize to the support of Sigma, shedding the
  // flag directions (including S^p nodes outside the support, which split
  // off as rank-0 factors)
  std::vector<int> supp = sys.sigma_support();
  if (static_cast<int>(supp.size()) < sys.rs->rank()) {
    node.kind = DecompNode::Kind::Parabolic;
    node.kept_nodes = supp;
    for (int a : sys.sp)
      if (!std::binary_search(supp.begin(), supp.end(), a)) node.shed_sp_nodes.push_back(a);
    std::vector<int> sp;
    for (int a : sys.sp)
      if (std::binary_search(supp.begin(), supp.end(), a)) sp.push_back(a);
    SphericalSystem inner(sys.rs, sp, sys.sigma);
    node.children.push_back(decompose(localize(inner, supp), catalog));
    return node;
  }

  auto factors = split_products(sys);
  if (factors.size() > 1) {
    node.kind = DecompNode::Kind::Product;
    for (const auto& f : factors) node.children.push_back(decompose(f, catalog));
    return node;
  }

  // cuspidal and indecomposable as a product: match or decompose further
  auto m = catalog.match(sys);
  if (std::holds_alternative<MatchResult>(m)) {
    const auto& mr = std::get<MatchResult>(m);
    node.kind = DecompNode::Kind::LeafPrimitive;
    node.leaf_ref = mr.entry_id;
    node.leaf_params = mr.params;
    return node;
  }
  if (sys.sigma.size() <= 2) {
    node.kind = DecompNode::Kind::LeafExternal;
    node.leaf_ref = "external:rank<=2";
    return node;
  }

  // fiber-product search over ordered pairs of disjoint nonempty
  // distinguished subsets, in (size, lex) order
  ColourSet cs = build_colours(sys);
  const int nc = static_cast<int>(cs.colours.size());
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask < (1u << nc); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < nc; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  auto measure = [](const SphericalSystem& s) {
    return 2 * s.rs->rank() - static_cast<int>(s.sp.size()) +
           static_cast<int>(s.sigma.size());
  };
  const int parent_measure = measure(sys);

  for (const auto& d1 : subsets) {
    for (const auto& d2 : subsets) {
      bool disjoint = true;
      for (int x : d1)
        if (std::binary_search(d2.begin(), d2.end(), x)) disjoint = false;
      if (!disjoint) continue;
      std::vector<int> d3;
      std::merge(d1.begin(), d1.end(), d2.begin(), d2.end(), std::back_inserter(d3));

      auto c1 = classify_subset(sys, cs, d1);
      if (!c1.distinguished) continue;
      auto c2 = classify_subset(sys, cs, d2);
      if (!c2.distinguished) continue;
      if (!c1.smooth && !c2.smooth) continue;  // (v)
      auto q1 = quotient(sys, cs, d1);
      if (!q1.ok) continue;
      auto q2 = quotient(sys, cs, d2);
      if (!q2.ok) continue;
      auto q3 = quotient(sys, cs, d3);
      if (!q3.ok || !q3.distinguished) continue;

      // (iii) the removed parts of Sigma must not overlap
      auto removed = [&](const QuotientResult& q) {
        std::vector<RootVector> out;
        for (const auto& g : sys.sigma)
          if (std::find(q.sigma_q.begin(), q.sigma_q.end(), g) == q.sigma_q.end())
            out.push_back(g);
        return out;
      };
      bool overlap = false;
      auto r1 = removed(q1);
      auto r2 = removed(q2);
      for (const auto& g : r1)
        if (std::find(r2.begin(), r2.end(), g) != r2.end()) overlap = true;
      if (overlap) continue;

      // (iv) the new S^p parts must be orthogonal
      bool orth = true;
      for (int a : q1.sp_q) {
        if (sys.in_sp(a)) continue;
        for (int b : q2.sp_q) {
          if (sys.in_sp(b)) continue;
          if (a == b || sys.rs->adjacent(a, b)) orth = false;
        }
      }
      if (!orth) continue;

      if (measure(q1.system) >= parent_measure || measure(q2.system) >= parent_measure ||
          measure(q3.system) >= parent_measure)
        continue;  // defensive: recursion must shrink

      node.kind = DecompNode::Kind::Fiber;
      for (int x : d1) node.fiber_delta1.push_back(cs.colours[x].id());
      for (int x : d2) node.fiber_delta2.push_back(cs.colours[x].id());
      node.children.push_back(decompose(q1.system, catalog));
      node.children.push_back(decompose(q2.system, catalog));
      node.children.push_back(decompose(q3.system, catalog));
      return node;
    }
  }

  node.kind = DecompNode::Kind::LeafUnresolved;
  node.leaf_ref = "unresolved";
  return node;
}

inline bool has_unresolved(const DecompNode& n) {
  if (n.kind == DecompNode::Kind::LeafUnresolved) return true;
  for (const auto& c : n.children)
    if (has_unresolved(c)) return true;
  return false;
}

}  // namespace sphere
