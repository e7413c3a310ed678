#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sphere/candidates.hpp"
#include "sphere/root_system.hpp"

namespace sphere {

/// A spherical system with empty A: the triple (S^p, Sigma, {}).
struct SphericalSystem {
  std::shared_ptr<const RootSystem> rs;
  std::vector<int> sp;             // sorted node indices
  std::vector<RootVector> sigma;   // sorted lexicographically

  SphericalSystem() = default;
  SphericalSystem(std::shared_ptr<const RootSystem> rs_, std::vector<int> sp_,
                  std::vector<RootVector> sigma_)
      : rs(std::move(rs_)), sp(std::move(sp_)), sigma(std::move(sigma_)) {
    std::sort(sp.begin(), sp.end());
    sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
    std::sort(sigma.begin(), sigma.end());
  }

  bool in_sp(int node) const {
    return std::binary_search(sp.begin(), sp.end(), node);
  }

  std::vector<int> sigma_support() const {
    std::vector<bool> seen(rs->rank(), false);
    for (const auto& g : sigma)
      for (int i : support(g)) seen[i] = true;
    std::vector<int> out;
    for (int i = 0; i < rs->rank(); ++i)
      if (seen[i]) out.push_back(i);
    return out;
  }

  bool cuspidal() const {
    return static_cast<int>(sigma_support().size()) == rs->rank();
  }

  friend bool operator==(const SphericalSystem& a, const SphericalSystem& b) {
    return a.rs->diagram() == b.rs->diagram() && a.sp == b.sp && a.sigma == b.sigma;
  }
};

struct AxiomCheck {
  std::string axiom;
  bool pass;
  std::string detail;
};

struct AxiomReport {
  bool pass = true;
  std::vector<AxiomCheck> checks;

  void add(const std::string& axiom, bool ok, const std::string& detail = "") {
    checks.push_back({axiom, ok, detail});
    pass = pass && ok;
  }
};

namespace detail {

/// {alpha in Supp g : (g, alpha) = 0 and g - alpha not a root}
inline std::vector<int> axiom_s_lower(const RootSystem& rs, const RootVector& g) {
  std::vector<int> out;
  for (int a : support(g)) {
    if (!rs.inner(g, rs.simple_root(a)).is_zero()) continue;
    RootVector diff = g - rs.simple_root(a);
    if (!rs.is_root(diff)) out.push_back(a);
  }
  return out;
}

inline std::vector<int> axiom_s_upper(const RootSystem& rs, const RootVector& g) {
  std::vector<int> out;
  for (int a = 0; a < rs.rank(); ++a)
    if (rs.inner(g, rs.simple_root(a)).is_zero()) out.push_back(a);
  return out;
}

inline std::string node_list(const std::vector<int>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += "a" + std::to_string(v[i] + 1);
  }
  return s + "}";
}

}  // namespace detail

/// Check the axioms for A = {}: Sigma avoids simple roots, (Sigma1),
/// (Sigma2), and (S) in its combinatorial form, with the type-F spherical
/// root handled by its explicit parabolic datum.  Linear independence and
/// pattern recognition are reported alongside.
inline AxiomReport validate_axioms(const SphericalSystem& sys) {
  const RootSystem& rs = *sys.rs;
  const int n = rs.rank();
  AxiomReport rep;

  bool domain_ok = true;
  std::string domain_detail;
  for (const auto& g : sys.sigma) {
    if (static_cast<int>(g.c.size()) != n) {
      domain_ok = false;
      domain_detail = "sigma vector of wrong length";
      break;
    }
    bool nonneg = std::all_of(g.c.begin(), g.c.end(), [](Int x) { return x >= 0; });
    if (!nonneg || g.is_zero()) {
      domain_ok = false;
      domain_detail = pretty(g) + " is not a nonzero element of NS";
      break;
    }
  }
  for (int a : sys.sp)
    if (a < 0 || a >= n) {
      domain_ok = false;
      domain_detail = "S^p node out of range";
    }
  rep.add("domain", domain_ok, domain_detail);
  if (!domain_ok) return rep;

  // A = {} forces Sigma to avoid the simple roots
  bool nosimple = true;
  std::string nosimple_detail;
  for (const auto& g : sys.sigma) {
    IntVec abs = g.c;
    Int total = 0;
    for (Int x : abs) total += x;
    if (total == 1) {
      nosimple = false;
      nosimple_detail = pretty(g) + " is a simple root";
    }
  }
  rep.add("no-simple-roots", nosimple, nosimple_detail);

  bool distinct = true;
  for (size_t i = 0; i + 1 < sys.sigma.size(); ++i)
    if (sys.sigma[i] == sys.sigma[i + 1]) distinct = false;
  rep.add("distinct", distinct, distinct ? "" : "duplicate spherical roots");

  {
    RatMat m;
    for (const auto& g : sys.sigma) {
      RatVec row(n);
      for (int i = 0; i < n; ++i) row[i] = Rat(g.c[i]);
      m.push_back(std::move(row));
    }
    bool indep = rank(std::move(m)) == static_cast<int>(sys.sigma.size());
    rep.add("independent", indep, indep ? "" : "Sigma is linearly dependent");
  }

  std::vector<std::optional<CandidateRoot>> kinds;
  bool patterns_ok = true;
  std::string pattern_detail;
  for (const auto& g : sys.sigma) {
    kinds.push_back(classify_root(rs, g));
    if (!kinds.back()) {
      patterns_ok = false;
      pattern_detail = pretty(g) + " matches no spherical root pattern";
    }
  }
  rep.add("pattern", patterns_ok, pattern_detail);
  if (!patterns_ok || !nosimple || !distinct) return rep;

  // (Sigma1)
  bool s1 = true;
  std::string s1_detail;
  for (size_t k = 0; k < sys.sigma.size(); ++k) {
    if (kinds[k]->type != SupportType::A1Doubled) continue;
    int a = kinds[k]->local_nodes[0];
    for (const auto& g : sys.sigma) {
      if (g == sys.sigma[k]) continue;
      Int p = rs.pairing(g, a);
      if (p > 0 || p % 2 != 0) {
        s1 = false;
        s1_detail = "<a" + std::to_string(a + 1) + "^vee," + pretty(g) + "> = " +
                    std::to_string(p) + " but 2a" + std::to_string(a + 1) + " in Sigma";
      }
    }
  }
  rep.add("Sigma1", s1, s1_detail);

  // (Sigma2)
  bool s2 = true;
  std::string s2_detail;
  for (size_t k = 0; k < sys.sigma.size(); ++k) {
    if (kinds[k]->type != SupportType::A1xA1) continue;
    int a = kinds[k]->local_nodes[0], b = kinds[k]->local_nodes[1];
    for (const auto& g : sys.sigma) {
      if (rs.pairing(g, a) != rs.pairing(g, b)) {
        s2 = false;
        s2_detail = "a" + std::to_string(a + 1) + "+a" + std::to_string(b + 1) +
                    " in Sigma but pairings differ on " + pretty(g);
      }
    }
  }
  rep.add("Sigma2", s2, s2_detail);

  // (S)
  bool s_ok = true;
  std::string s_detail;
  for (size_t k = 0; k < sys.sigma.size(); ++k) {
    const RootVector& g = sys.sigma[k];
    std::vector<int> lower;
    bool f_special = kinds[k]->type == SupportType::F4;
    if (f_special) {
      // type-F special rule: the rank-one parabolic datum is the three
      // nodes away from the short end, used verbatim as the lower bound
      lower.assign(kinds[k]->local_nodes.begin(), kinds[k]->local_nodes.end() - 1);
      std::sort(lower.begin(), lower.end());
    } else {
      lower = detail::axiom_s_lower(rs, g);
    }
    std::vector<int> upper = detail::axiom_s_upper(rs, g);
    for (int a : lower)
      if (!sys.in_sp(a)) {
        s_ok = false;
        s_detail = pretty(g) + (f_special ? " (type-F special rule)" : "") +
                   " needs " + detail::node_list(lower) + " inside S^p";
      }
    for (int a : sys.sp)
      if (!std::binary_search(upper.begin(), upper.end(), a)) {
        s_ok = false;
        s_detail = "S^p contains a" + std::to_string(a + 1) + " not orthogonal to " + pretty(g);
      }
  }
  rep.add("S", s_ok, s_detail);
  return rep;
}

/// A colour of the system, of kind a' (attached to alpha with 2alpha in
/// Sigma) or b (one node, or an orthogonal pair identified across a
/// spherical root alpha+alpha').
struct Colour {
  enum class Kind { APrime, B };
  Kind kind;
  std::vector<int> nodes;   // 1 or 2 nodes, sorted
  Weight sigma_weight;       // image under sigma: 2w_a, or sum of w over nodes
  std::vector<Rat> rho;      // functional on Sigma, in sigma order

  std::string id() const {
    std::string s = kind == Kind::APrime ? "Da'(" : "Db(";
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (i) s += ",";
      s += "a" + std::to_string(nodes[i] + 1);
    }
    return s + ")";
  }
};

struct ColourSet {
  std::vector<Colour> colours;
  std::vector<int> colour_of_node;  // node -> colour index, -1 for S^p nodes

  std::vector<int> of_nodes(const std::vector<int>& nodes) const {
    std::vector<int> out;
    for (int a : nodes)
      if (colour_of_node[a] >= 0) out.push_back(colour_of_node[a]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// Build Delta = Delta^{a'} u Delta^b with the functionals rho
/// (half pairing for a' colours, pairing for b colours).
inline ColourSet build_colours(const SphericalSystem& sys) {
  const RootSystem& rs = *sys.rs;
  const int n = rs.rank();

  std::vector<bool> doubled(n, false);
  for (const auto& g : sys.sigma) {
    auto k = classify_root(rs, g);
    if (k && k->type == SupportType::A1Doubled) doubled[k->local_nodes[0]] = true;
    if (!k) throw std::invalid_argument("build_colours: unrecognized spherical root");
    Int total = 0;
    for (Int x : g.c) total += x;
    if (total == 1) throw std::invalid_argument("build_colours: simple root in Sigma with A = {}");
  }

  // identify orthogonal pairs joined by a spherical root a+a' (the half-sum
  // variant cannot occur inside the root lattice but is checked for form)
  std::vector<int> partner(n, -1);
  for (const auto& g : sys.sigma) {
    auto k = classify_root(rs, g);
    if (k->type != SupportType::A1xA1) continue;
    int a = k->local_nodes[0], b = k->local_nodes[1];
    if (partner[a] != -1 || partner[b] != -1)
      throw std::invalid_argument("build_colours: inconsistent colour identification");
    partner[a] = b;
    partner[b] = a;
  }

  ColourSet cs;
  cs.colour_of_node.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (cs.colour_of_node[a] >= 0) continue;
    if (doubled[a]) {
      Colour c;
      c.kind = Colour::Kind::APrime;
      c.nodes = {a};
      c.sigma_weight = 2 * rs.fundamental_weight(a);
      cs.colour_of_node[a] = static_cast<int>(cs.colours.size());
      cs.colours.push_back(std::move(c));
      continue;
    }
    if (sys.in_sp(a)) continue;
    Colour c;
    c.kind = Colour::Kind::B;
    c.nodes = {a};
    c.sigma_weight = rs.fundamental_weight(a);
    if (partner[a] >= 0) {
      int b = partner[a];
      if (doubled[b] || sys.in_sp(b))
        throw std::invalid_argument("build_colours: inconsistent colour identification");
      c.nodes = {std::min(a, b), std::max(a, b)};
      c.sigma_weight = rs.fundamental_weight(a) + rs.fundamental_weight(b);
    }
    int idx = static_cast<int>(cs.colours.size());
    for (int x : c.nodes) cs.colour_of_node[x] = idx;
    cs.colours.push_back(std::move(c));
  }

  for (auto& c : cs.colours) {
    for (const auto& g : sys.sigma) {
      Rat v;
      if (c.kind == Colour::Kind::APrime)
        v = Rat(rs.pairing(g, c.nodes[0]), 2);
      else {
        v = Rat(rs.pairing(g, c.nodes[0]));
        if (c.nodes.size() == 2 && rs.pairing(g, c.nodes[1]) != rs.pairing(g, c.nodes[0]))
          throw std::invalid_argument("build_colours: identified pair with unequal functionals");
      }
      c.rho.push_back(v);
    }
  }
  return cs;
}

struct CompatCheck {
  std::string condition;
  bool pass;
  std::string detail;
};

struct CompatReport {
  bool pass = true;
  std::vector<CompatCheck> checks;

  void add(const std::string& cond, bool ok, const std::string& detail = "") {
    checks.push_back({cond, ok, detail});
    pass = pass && ok;
  }
};

/// Gamma-compatibility: Sigma lies in the lattice of the tuple, every
/// generator is a nonnegative integral combination of colour images, and
/// every colour occurs in at least one generator (regularity).
template <typename Tuple>
inline CompatReport check_gamma_compat(const SphericalSystem& sys, const ColourSet& cs,
                                       const Tuple& t) {
  const RootSystem& rs = *sys.rs;
  CompatReport rep;

  bool lat = true;
  std::string lat_detail;
  for (const auto& g : sys.sigma)
    if (!t.in_lattice(rs.to_weight(g))) {
      lat = false;
      lat_detail = pretty(g) + " is not in ZGamma";
    }
  rep.add("sigma-in-lattice", lat, lat_detail);

  bool decomp = true;
  std::string decomp_detail;
  for (size_t i = 0; i < t.weights.size() && decomp; ++i) {
    const Weight& lam = t.weights[i];
    for (int a = 0; a < rs.rank() && decomp; ++a) {
      int ci = cs.colour_of_node[a];
      if (ci < 0) {
        if (lam.w[a] != 0) {
          decomp = false;
          decomp_detail = "lambda_" + std::to_string(i + 1) + " touches S^p node a" +
                          std::to_string(a + 1);
        }
        continue;
      }
      const Colour& c = cs.colours[ci];
      if (c.kind == Colour::Kind::APrime && lam.w[a] % 2 != 0) {
        decomp = false;
        decomp_detail = "lambda_" + std::to_string(i + 1) + " has odd coefficient at a'" +
                        " colour node a" + std::to_string(a + 1);
      }
      if (c.nodes.size() == 2 && lam.w[c.nodes[0]] != lam.w[c.nodes[1]]) {
        decomp = false;
        decomp_detail = "lambda_" + std::to_string(i + 1) +
                        " has unequal coefficients on identified pair " + c.id();
      }
    }
  }
  rep.add("generators-in-NDelta", decomp, decomp_detail);

  bool reg = true;
  std::string reg_detail;
  for (const auto& c : cs.colours) {
    bool occurs = false;
    for (const auto& lam : t.weights)
      if (lam.w[c.nodes[0]] > 0 &&
          (c.nodes.size() == 1 || lam.w[c.nodes[1]] == lam.w[c.nodes[0]]))
        occurs = true;
    if (!occurs) {
      reg = false;
      reg_detail = "colour " + c.id() + " occurs in no generator";
    }
  }
  rep.add("regularity", reg, reg_detail);
  return rep;
}

struct NoDoublingReport {
  bool pass = true;
  std::vector<std::pair<RootVector, bool>> roots;  // per B-chain root
};

/// The deformation obstruction: a spherical root a_1+...+a_n with support
/// of type B_n is excluded when its short end a_n lies in S^p.
inline NoDoublingReport check_no_doubling(const SphericalSystem& sys) {
  NoDoublingReport rep;
  for (const auto& g : sys.sigma) {
    auto k = classify_root(*sys.rs, g);
    if (!k || k->type != SupportType::Bn) continue;
    int short_end = k->local_nodes.back();
    bool ok = !sys.in_sp(short_end);
    rep.roots.emplace_back(g, ok);
    rep.pass = rep.pass && ok;
  }
  return rep;
}

}  // namespace sphere
