#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sphere/cone.hpp"
#include "sphere/lp.hpp"
#include "sphere/sphsys.hpp"

namespace sphere {

/// Colour-subset calculus on a spherical system: distinguished subsets,
/// the strictly-positive part Sigma(Delta'), quotient systems, smooth and
/// parabolic classification, product splitting, strong adjacency,
/// erasability, and the decomposition into primitive factors.

namespace decomp_detail {

/// Feasibility system for coefficients c_D >= 1 on the subset:
/// substituting c = 1 + y with y >= 0 keeps everything linear.
/// rows: one per spherical root (>= -base), plus y >= 0.
inline void build_lp(const ColourSet& cs, const std::vector<int>& subset, size_t nsigma,
                     RatMat& g, RatVec& h) {
  const int k = static_cast<int>(subset.size());
  g.clear();
  h.clear();
  for (size_t s = 0; s < nsigma; ++s) {
    RatVec row(k);
    Rat base(0);
    for (int i = 0; i < k; ++i) {
      row[i] = cs.colours[subset[i]].rho[s];
      base += cs.colours[subset[i]].rho[s];
    }
    g.push_back(std::move(row));
    h.push_back(-base);
  }
  for (int i = 0; i < k; ++i) {
    RatVec row(k, Rat(0));
    row[i] = Rat(1);
    g.push_back(std::move(row));
    h.push_back(Rat(0));
  }
}

}  // namespace decomp_detail

/// Positive coefficients c_D with sum c_D <rho(D), gamma> >= 0 for all
/// gamma; the certificate is returned on success.
inline std::optional<RatVec> is_distinguished(const SphericalSystem& sys, const ColourSet& cs,
                                              const std::vector<int>& subset) {
  if (subset.empty()) return RatVec{};  // empty combination, conditions vacuous
  RatMat g;
  RatVec h;
  decomp_detail::build_lp(cs, subset, sys.sigma.size(), g, h);
  auto y = feasible_point(g, h);
  if (!y) return std::nullopt;
  RatVec c(subset.size());
  for (size_t i = 0; i < subset.size(); ++i) c[i] = Rat(1) + (*y)[i];
  return c;
}

/// Sigma(Delta'): the spherical roots on which some admissible combination
/// is strictly positive.  Per-root feasibility; convexity makes the union
/// simultaneously achievable.
inline std::vector<int> sigma_of(const SphericalSystem& sys, const ColourSet& cs,
                                 const std::vector<int>& subset) {
  std::vector<int> out;
  if (subset.empty()) return out;
  const size_t nsigma = sys.sigma.size();
  for (size_t s0 = 0; s0 < nsigma; ++s0) {
    RatMat g;
    RatVec h;
    decomp_detail::build_lp(cs, subset, nsigma, g, h);
    // strictness on s0: sum (1 + y_D) rho_D(s0) >= 1
    RatVec row(subset.size());
    Rat base(0);
    for (size_t i = 0; i < subset.size(); ++i) {
      row[i] = cs.colours[subset[i]].rho[s0];
      base += cs.colours[subset[i]].rho[s0];
    }
    g.push_back(std::move(row));
    h.push_back(Rat(1) - base);
    if (feasible_point(g, h)) out.push_back(static_cast<int>(s0));
  }
  return out;
}

struct SubsetClass {
  bool distinguished = false;
  bool smooth = false;
  bool parabolic = false;
  std::vector<int> sigma_of_idx;
};

/// smooth: V(Delta') is spanned by the duals of Sigma(Delta'), i.e. every
/// functional of the subset vanishes outside Sigma(Delta');
/// parabolic: Sigma(Delta') is everything.
inline SubsetClass classify_subset(const SphericalSystem& sys, const ColourSet& cs,
                                   const std::vector<int>& subset) {
  SubsetClass out;
  out.distinguished = is_distinguished(sys, cs, subset).has_value();
  out.sigma_of_idx = sigma_of(sys, cs, subset);
  out.parabolic = out.sigma_of_idx.size() == sys.sigma.size();
  out.smooth = true;
  std::vector<bool> in_sof(sys.sigma.size(), false);
  for (int s : out.sigma_of_idx) in_sof[s] = true;
  for (int ci : subset)
    for (size_t s = 0; s < sys.sigma.size(); ++s)
      if (!in_sof[s] && !cs.colours[ci].rho[s].is_zero()) out.smooth = false;
  return out;
}

/// Delta(S'): all colours attached to the given nodes.
inline std::vector<int> colours_of_nodes(const ColourSet& cs, const std::vector<int>& nodes) {
  return cs.of_nodes(nodes);
}

struct QuotientResult {
  bool ok = false;
  std::string error;
  bool distinguished = false;
  std::vector<int> sigma_of_idx;
  int xi_rank = 0;
  IntMat xi_basis;                    // basis of Xi/Delta' in Sigma coordinates
  IntMat sigma_q_coeffs;              // Sigma/Delta' in Sigma coordinates
  std::vector<RootVector> sigma_q;    // Sigma/Delta' as root-lattice vectors
  std::vector<int> sp_q;
  SphericalSystem system;             // (S^p/Delta', Sigma/Delta', {}) when ok
};

/// Quotient data for an arbitrary colour subset.  The quotient is a
/// spherical system exactly when Sigma/Delta' is a basis of Xi/Delta';
/// otherwise the error reports why.
inline QuotientResult quotient(const SphericalSystem& sys, const ColourSet& cs,
                               const std::vector<int>& subset) {
  QuotientResult out;
  out.distinguished = is_distinguished(sys, cs, subset).has_value();
  out.sigma_of_idx = sigma_of(sys, cs, subset);
  const int nsigma = static_cast<int>(sys.sigma.size());

  // integer constraint matrix on Sigma coordinates: functionals of the
  // subset (a' functionals doubled to clear halves) and the unit rows of
  // Sigma(Delta')
  IntMat a;
  for (int ci : subset) {
    IntVec row(nsigma);
    for (int s = 0; s < nsigma; ++s) {
      Rat v = cs.colours[ci].rho[s] * Rat(cs.colours[ci].kind == Colour::Kind::APrime ? 2 : 1);
      if (!v.is_integer()) throw std::logic_error("non-integral colour functional");
      row[s] = v.num();
    }
    a.push_back(std::move(row));
  }
  for (int s : out.sigma_of_idx) {
    IntVec row(nsigma, 0);
    row[s] = 1;
    a.push_back(std::move(row));
  }

  out.xi_basis = integer_kernel(a, nsigma);
  out.xi_rank = static_cast<int>(out.xi_basis.size());
  MonoidBasis mb = monoid_basis(a, nsigma);
  if (!mb.is_basis) {
    out.error = "Sigma/Delta' is not a basis of Xi/Delta': " + mb.reason;
    return out;
  }
  out.sigma_q_coeffs = mb.rays;
  for (const auto& coeffs : out.sigma_q_coeffs) {
    RootVector g(IntVec(sys.rs->rank(), 0));
    for (int s = 0; s < nsigma; ++s)
      if (coeffs[s] != 0) g = g + coeffs[s] * sys.sigma[s];
    out.sigma_q.push_back(std::move(g));
  }
  for (int node = 0; node < sys.rs->rank(); ++node) {
    int ci = cs.colour_of_node[node];
    bool inside = ci < 0 || std::find(subset.begin(), subset.end(), ci) != subset.end();
    if (inside) out.sp_q.push_back(node);
  }
  out.system = SphericalSystem(sys.rs, out.sp_q, out.sigma_q);
  out.ok = true;
  return out;
}

/// Restrict the system to a node subset containing the support of Sigma.
inline SphericalSystem localize(const SphericalSystem& sys, const std::vector<int>& nodes) {
  auto sub = sys.rs->sub_diagram(nodes);
  std::vector<int> from_parent(sys.rs->rank(), -1);
  for (size_t i = 0; i < sub.to_parent.size(); ++i) from_parent[sub.to_parent[i]] = static_cast<int>(i);
  auto loc_rs = std::make_shared<const RootSystem>(sub.diagram);
  std::vector<int> sp;
  for (int a : sys.sp)
    if (from_parent[a] >= 0) sp.push_back(from_parent[a]);
  std::vector<RootVector> sigma;
  for (const auto& g : sys.sigma) {
    IntVec c(sub.to_parent.size(), 0);
    for (int i : support(g)) {
      if (from_parent[i] < 0) throw std::invalid_argument("localize: support not contained");
      c[from_parent[i]] = g.c[i];
    }
    sigma.push_back(RootVector(std::move(c)));
  }
  return SphericalSystem(loc_rs, std::move(sp), std::move(sigma));
}

struct CuspidalReduction {
  SphericalSystem localized;
  std::vector<int> kept_nodes;   // Supp Sigma u S^p in parent labels
  bool reduced = false;          // whether any node was dropped
};

/// Localize to S' = Supp Sigma u S^p, the smallest Levi the system is
/// induced from.
inline CuspidalReduction cuspidal_reduce(const SphericalSystem& sys) {
  std::vector<int> keep = sys.sigma_support();
  for (int a : sys.sp) keep.push_back(a);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  CuspidalReduction out;
  out.kept_nodes = keep;
  out.reduced = static_cast<int>(keep.size()) < sys.rs->rank();
  out.localized = out.reduced ? localize(sys, keep) : sys;
  return out;
}

/// Split along the finest orthogonal partition of S for which every
/// spherical root keeps its support in one part.
inline std::vector<SphericalSystem> split_products(const SphericalSystem& sys) {
  const int n = sys.rs->rank();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sys.rs->adjacent(i, j)) unite(i, j);
  for (const auto& g : sys.sigma) {
    auto s = support(g);
    for (size_t i = 1; i < s.size(); ++i) unite(s[0], s[i]);
  }
  std::map<int, std::vector<int>> parts;
  for (int i = 0; i < n; ++i) parts[find(i)].push_back(i);
  if (parts.size() <= 1) return {sys};
  std::vector<SphericalSystem> out;
  for (auto& [root, nodes] : parts) {
    (void)root;
    out.push_back(localize(sys, nodes));
  }
  return out;
}

/// Partition of Sigma into strongly Delta-connected components.
inline std::vector<std::vector<int>> strong_components(const SphericalSystem& sys,
                                                       const ColourSet& cs) {
  const int m = static_cast<int>(sys.sigma.size());
  auto adjacent = [&](int i, int j) {
    for (int ci : cs.of_nodes(support(sys.sigma[i])))
      if (cs.colours[ci].rho[j].is_zero()) return false;
    for (int cj : cs.of_nodes(support(sys.sigma[j])))
      if (cs.colours[cj].rho[i].is_zero()) return false;
    return true;
  };
  std::vector<int> comp(m, -1);
  int nc = 0;
  for (int i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack = {i};
    comp[i] = nc;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < m; ++y)
        if (comp[y] < 0 && adjacent(x, y)) {
          comp[y] = nc;
          stack.push_back(y);
        }
    }
    ++nc;
  }
  std::vector<std::vector<int>> out(nc);
  for (int i = 0; i < m; ++i) out[comp[i]].push_back(i);
  return out;
}

/// Delta(Sigma'): colours on the support of Sigma' whose functional
/// vanishes on the rest of Sigma.
inline std::vector<int> colours_of_sigma_subset(const SphericalSystem& sys, const ColourSet& cs,
                                                const std::vector<int>& sigma_idx) {
  std::vector<bool> inside(sys.sigma.size(), false);
  for (int s : sigma_idx) inside[s] = true;
  std::vector<int> supp;
  for (int s : sigma_idx)
    for (int a : support(sys.sigma[s])) supp.push_back(a);
  std::vector<int> out;
  for (int ci : cs.of_nodes(supp)) {
    bool vanishes = true;
    for (size_t s = 0; s < sys.sigma.size(); ++s)
      if (!inside[s] && !cs.colours[ci].rho[s].is_zero()) vanishes = false;
    if (vanishes) out.push_back(ci);
  }
  return out;
}

struct ErasabilityResult {
  bool erasable = false;
  bool quasi_erasable = false;
  std::optional<std::vector<int>> witness_erasable;
  std::optional<std::vector<int>> witness_quasi;
};

/// Search nonempty subsets of Delta(Sigma') in (size, lex) order for a
/// smooth distinguished witness (erasable) or one whose quotient exists
/// (quasi-erasable).
inline ErasabilityResult erasability(const SphericalSystem& sys, const ColourSet& cs,
                                     const std::vector<int>& sigma_idx) {
  ErasabilityResult out;
  std::vector<int> pool = colours_of_sigma_subset(sys, cs, sigma_idx);
  const int k = static_cast<int>(pool.size());
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) s.push_back(pool[i]);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (const auto& s : subsets) {
    auto cls = classify_subset(sys, cs, s);
    if (!cls.distinguished) continue;
    if (cls.smooth && !out.erasable) {
      out.erasable = true;
      out.witness_erasable = s;
    }
    if (!out.quasi_erasable && quotient(sys, cs, s).ok) {
      out.quasi_erasable = true;
      out.witness_quasi = s;
    }
    if (out.erasable && out.quasi_erasable) break;
  }
  return out;
}

}  // namespace sphere
