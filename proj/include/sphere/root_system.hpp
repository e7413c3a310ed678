#pragma once

#include <algorithm>
#include <cassert>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphere/dynkin.hpp"
#include "sphere/linalg.hpp"
#include "sphere/rational.hpp"

namespace sphere {

/// Element of the weight lattice in fundamental-weight coordinates.
struct Weight {
  IntVec w;

  Weight() = default;
  explicit Weight(IntVec coords) : w(std::move(coords)) {}

  bool is_zero() const {
    return std::all_of(w.begin(), w.end(), [](Int x) { return x == 0; });
  }
  bool is_dominant() const {
    return std::all_of(w.begin(), w.end(), [](Int x) { return x >= 0; });
  }

  friend Weight operator+(const Weight& a, const Weight& b) {
    Weight r = a;
    for (size_t i = 0; i < r.w.size(); ++i) r.w[i] += b.w[i];
    return r;
  }
  friend Weight operator-(const Weight& a, const Weight& b) {
    Weight r = a;
    for (size_t i = 0; i < r.w.size(); ++i) r.w[i] -= b.w[i];
    return r;
  }
  friend Weight operator*(Int k, const Weight& a) {
    Weight r = a;
    for (auto& x : r.w) x *= k;
    return r;
  }
  friend bool operator==(const Weight& a, const Weight& b) { return a.w == b.w; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  friend bool operator<(const Weight& a, const Weight& b) { return a.w < b.w; }
};

/// Element of the root lattice in simple-root coordinates.
struct RootVector {
  IntVec c;

  RootVector() = default;
  explicit RootVector(IntVec coords) : c(std::move(coords)) {}

  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](Int x) { return x == 0; });
  }

  friend RootVector operator+(const RootVector& a, const RootVector& b) {
    RootVector r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend RootVector operator-(const RootVector& a, const RootVector& b) {
    RootVector r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
  }
  friend RootVector operator*(Int k, const RootVector& a) {
    RootVector r = a;
    for (auto& x : r.c) x *= k;
    return r;
  }
  friend bool operator==(const RootVector& a, const RootVector& b) { return a.c == b.c; }
  friend bool operator!=(const RootVector& a, const RootVector& b) { return !(a == b); }
  friend bool operator<(const RootVector& a, const RootVector& b) { return a.c < b.c; }
};

inline std::vector<int> support(const RootVector& v) {
  std::vector<int> s;
  for (size_t i = 0; i < v.c.size(); ++i)
    if (v.c[i] != 0) s.push_back(static_cast<int>(i));
  return s;
}

inline std::string pretty(const RootVector& v) {
  std::string s;
  for (size_t i = 0; i < v.c.size(); ++i) {
    if (v.c[i] == 0) continue;
    if (!s.empty()) s += v.c[i] > 0 ? "+" : "-";
    else if (v.c[i] < 0) s += "-";
    Int a = v.c[i] < 0 ? -v.c[i] : v.c[i];
    if (a != 1) s += std::to_string(a);
    s += "a" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

inline std::string pretty(const Weight& v) {
  std::string s;
  for (size_t i = 0; i < v.w.size(); ++i) {
    if (v.w[i] == 0) continue;
    if (!s.empty()) s += v.w[i] > 0 ? "+" : "-";
    else if (v.w[i] < 0) s += "-";
    Int a = v.w[i] < 0 ? -v.w[i] : v.w[i];
    if (a != 1) s += std::to_string(a);
    s += "w" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

/// Exact root-system data for a semisimple diagram: Cartan matrix,
/// symmetrizer (long roots normalized to squared length 2 per component),
/// positive roots generated by closure from the simple roots.
class RootSystem {
public:
  explicit RootSystem(DynkinDiagram diagram) : diagram_(std::move(diagram)) {
    build_cartan();
    build_positive_roots();
    build_inverse();
  }

  static std::shared_ptr<const RootSystem> make(const std::string& literal) {
    return std::make_shared<const RootSystem>(DynkinDiagram::parse(literal));
  }

  const DynkinDiagram& diagram() const { return diagram_; }
  int rank() const { return diagram_.rank(); }

  /// cartan(i, j) = <alpha_j^vee, alpha_i>
  Int cartan(int i, int j) const { return cartan_[i][j]; }
  /// half squared length of alpha_j
  const Rat& sym(int j) const { return d_[j]; }
  bool adjacent(int i, int j) const { return i != j && cartan_[i][j] != 0; }
  /// 1, 2 or 3 for joined nodes, 0 otherwise
  int edge_mult(int i, int j) const {
    return static_cast<int>(cartan_[i][j] * cartan_[j][i]);
  }

  const std::vector<RootVector>& positive_roots() const { return positive_roots_; }

  bool is_positive_root(const RootVector& v) const { return root_set_.count(v.c) > 0; }
  bool is_root(const RootVector& v) const {
    if (root_set_.count(v.c)) return true;
    IntVec neg(v.c.size());
    for (size_t i = 0; i < neg.size(); ++i) neg[i] = -v.c[i];
    return root_set_.count(neg) > 0;
  }

  RootVector simple_root(int i) const {
    IntVec c(rank(), 0);
    c[i] = 1;
    return RootVector(std::move(c));
  }
  Weight fundamental_weight(int i) const {
    IntVec w(rank(), 0);
    w[i] = 1;
    return Weight(std::move(w));
  }

  /// <alpha_j^vee, xi>
  Int pairing(const Weight& xi, int j) const { return xi.w[j]; }
  Int pairing(const RootVector& xi, int j) const {
    Int s = 0;
    for (int i = 0; i < rank(); ++i) s += xi.c[i] * cartan_[i][j];
    return s;
  }

  Weight to_weight(const RootVector& v) const {
    IntVec w(rank());
    for (int j = 0; j < rank(); ++j) w[j] = pairing(v, j);
    return Weight(std::move(w));
  }

  /// Coordinates of a weight in the simple-root basis (exact rationals).
  RatVec root_coords_rational(const Weight& mu) const {
    RatVec c(rank(), Rat(0));
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) c[i] += inv_cartan_t_[i][j] * Rat(mu.w[j]);
    return c;
  }

  /// Root-lattice members only.
  std::optional<RootVector> root_coords(const Weight& mu) const {
    RatVec c = root_coords_rational(mu);
    IntVec ic(rank());
    for (int i = 0; i < rank(); ++i) {
      if (!c[i].is_integer()) return std::nullopt;
      ic[i] = c[i].num();
    }
    return RootVector(std::move(ic));
  }

  /// Symmetrized invariant form.
  Rat inner(const RootVector& a, const RootVector& b) const {
    Rat s(0);
    Weight wa = to_weight(a);
    for (int j = 0; j < rank(); ++j)
      if (b.c[j] != 0) s += Rat(wa.w[j]) * d_[j] * Rat(b.c[j]);
    return s;
  }
  Rat inner(const Weight& a, const RootVector& b) const {
    Rat s(0);
    for (int j = 0; j < rank(); ++j)
      if (a.w[j] != 0 && b.c[j] != 0) s += Rat(a.w[j]) * d_[j] * Rat(b.c[j]);
    return s;
  }
  Rat inner(const Weight& a, const Weight& b) const {
    RatVec cb = root_coords_rational(b);
    Rat s(0);
    for (int j = 0; j < rank(); ++j)
      if (a.w[j] != 0) s += Rat(a.w[j]) * d_[j] * cb[j];
    return s;
  }

  /// true iff mu - lam is a nonnegative integer combination of simple roots
  bool dominance_leq(const Weight& lam, const Weight& mu) const {
    RatVec c = root_coords_rational(mu - lam);
    for (const Rat& x : c)
      if (!x.is_integer() || x.sign() < 0) return false;
    return true;
  }

  /// A sub-diagram induced on a node subset, classified into families with
  /// Bourbaki numbering.  to_parent maps the new labels back to this system.
  struct SubDiagram {
    DynkinDiagram diagram;
    std::vector<int> to_parent;
  };

  SubDiagram sub_diagram(std::vector<int> nodes) const {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<std::vector<int>> comps = connected_components(nodes);
    struct Classified {
      char family;
      std::vector<int> order;  // parent nodes in Bourbaki order
    };
    std::vector<Classified> parts;
    for (auto& comp : comps) {
      auto [fam, order] = classify_component(comp);
      parts.push_back({fam, std::move(order)});
    }
    std::sort(parts.begin(), parts.end(), [](const Classified& a, const Classified& b) {
      if (a.family != b.family) return a.family < b.family;
      if (a.order.size() != b.order.size()) return a.order.size() < b.order.size();
      return *std::min_element(a.order.begin(), a.order.end()) <
             *std::min_element(b.order.begin(), b.order.end());
    });
    std::vector<std::pair<char, int>> spec;
    std::vector<int> to_parent;
    for (auto& p : parts) {
      spec.emplace_back(p.family, static_cast<int>(p.order.size()));
      for (int x : p.order) to_parent.push_back(x);
    }
    return {DynkinDiagram(spec), std::move(to_parent)};
  }

  /// Projection of a weight onto the weight lattice of the Levi of S'.
  Weight levi_restrict(const SubDiagram& sub, const Weight& lam) const {
    IntVec w(sub.to_parent.size());
    for (size_t i = 0; i < sub.to_parent.size(); ++i) w[i] = lam.w[sub.to_parent[i]];
    return Weight(std::move(w));
  }

  RootVector levi_restrict(const SubDiagram& sub, const RootVector& v) const {
    IntVec c(sub.to_parent.size());
    for (size_t i = 0; i < sub.to_parent.size(); ++i) c[i] = v.c[sub.to_parent[i]];
    return RootVector(std::move(c));
  }

  /// Inverse of levi_restrict on root vectors supported in the sub-diagram.
  RootVector unrestrict(const SubDiagram& sub, const RootVector& v) const {
    IntVec c(rank(), 0);
    for (size_t i = 0; i < sub.to_parent.size(); ++i) c[sub.to_parent[i]] = v.c[i];
    return RootVector(std::move(c));
  }

  RootVector apply_perm(const std::vector<int>& perm, const RootVector& v) const {
    IntVec c(rank(), 0);
    for (int i = 0; i < rank(); ++i) c[perm[i]] = v.c[i];
    return RootVector(std::move(c));
  }

private:
  void build_cartan() {
    const int n = rank();
    cartan_.assign(n, IntVec(n, 0));
    d_.assign(n, Rat(1));
    for (int i = 0; i < n; ++i) cartan_[i][i] = 2;
    for (const auto& c : diagram_.components()) {
      const int f = c.first, r = c.rank;
      auto single = [&](int i, int j) { cartan_[f + i][f + j] = cartan_[f + j][f + i] = -1; };
      switch (c.family) {
        case 'A':
          for (int i = 0; i + 1 < r; ++i) single(i, i + 1);
          break;
        case 'B':
          for (int i = 0; i + 2 < r; ++i) single(i, i + 1);
          cartan_[f + r - 2][f + r - 1] = -2;
          cartan_[f + r - 1][f + r - 2] = -1;
          d_[f + r - 1] = Rat(1, 2);
          break;
        case 'C':
          for (int i = 0; i + 2 < r; ++i) single(i, i + 1);
          cartan_[f + r - 2][f + r - 1] = -1;
          cartan_[f + r - 1][f + r - 2] = -2;
          for (int i = 0; i + 1 < r; ++i) d_[f + i] = Rat(1, 2);
          break;
        case 'D':
          for (int i = 0; i + 3 < r; ++i) single(i, i + 1);
          single(r - 3, r - 2);
          single(r - 3, r - 1);
          break;
        case 'E':
          single(0, 2);
          single(2, 3);
          single(1, 3);
          for (int i = 3; i + 1 < r; ++i) single(i, i + 1);
          break;
        case 'F':
          single(0, 1);
          cartan_[f + 1][f + 2] = -2;
          cartan_[f + 2][f + 1] = -1;
          single(2, 3);
          d_[f + 2] = d_[f + 3] = Rat(1, 2);
          break;
        case 'G':
          cartan_[f + 0][f + 1] = -1;
          cartan_[f + 1][f + 0] = -3;
          d_[f + 0] = Rat(1, 3);
          break;
        default:
          throw std::logic_error("unknown family");
      }
    }
  }

  void build_positive_roots() {
    const int n = rank();
    std::vector<IntVec> frontier;
    for (int i = 0; i < n; ++i) {
      IntVec v(n, 0);
      v[i] = 1;
      root_set_.insert(v);
      frontier.push_back(std::move(v));
    }
    while (!frontier.empty()) {
      std::vector<IntVec> next;
      for (const auto& rv : frontier) {
        for (int j = 0; j < n; ++j) {
          // alpha_j-string through rv: q = p - <alpha_j^vee, rv>
          Int pairing_j = 0;
          for (int i = 0; i < n; ++i) pairing_j += rv[i] * cartan_[i][j];
          Int p = 0;
          IntVec down = rv;
          while (true) {
            down[j] -= 1;
            if (down[j] < 0 || !root_set_.count(down)) break;
            ++p;
          }
          if (p - pairing_j >= 1) {
            IntVec up = rv;
            up[j] += 1;
            if (root_set_.insert(up).second) next.push_back(std::move(up));
          }
        }
      }
      frontier = std::move(next);
    }
    for (const auto& v : root_set_) positive_roots_.push_back(RootVector(v));
    std::sort(positive_roots_.begin(), positive_roots_.end());
    size_t expected = 0;
    for (const auto& c : diagram_.components()) expected += positive_count(c.family, c.rank);
    if (positive_roots_.size() != expected)
      throw std::logic_error("positive root closure does not match classical count");
  }

  static size_t positive_count(char fam, int n) {
    switch (fam) {
      case 'A': return static_cast<size_t>(n) * (n + 1) / 2;
      case 'B':
      case 'C': return static_cast<size_t>(n) * n;
      case 'D': return static_cast<size_t>(n) * (n - 1);
      case 'E': return n == 6 ? 36 : (n == 7 ? 63 : 120);
      case 'F': return 24;
      case 'G': return 6;
      default: return 0;
    }
  }

  void build_inverse() {
    const int n = rank();
    // invert the transpose of the Cartan matrix: columns index coroots
    RatMat aug(n, RatVec(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) aug[i][j] = Rat(cartan_[j][i]);
      aug[i][n + i] = Rat(1);
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) != n)
      throw std::logic_error("Cartan matrix is singular");
    inv_cartan_t_.assign(n, RatVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv_cartan_t_[i][j] = aug[i][n + j];
  }

  std::vector<std::vector<int>> connected_components(const std::vector<int>& nodes) const {
    std::vector<std::vector<int>> comps;
    std::set<int> todo(nodes.begin(), nodes.end());
    while (!todo.empty()) {
      std::vector<int> comp, stack = {*todo.begin()};
      todo.erase(todo.begin());
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (auto it = todo.begin(); it != todo.end();) {
          if (adjacent(v, *it)) {
            stack.push_back(*it);
            it = todo.erase(it);
          } else {
            ++it;
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
  }

  std::pair<char, std::vector<int>> classify_component(const std::vector<int>& comp) const {
    const int n = static_cast<int>(comp.size());
    if (n == 1) return {'A', comp};

    auto deg = [&](int v) {
      int d = 0;
      for (int u : comp)
        if (adjacent(v, u)) ++d;
      return d;
    };
    auto neighbours = [&](int v) {
      std::vector<int> out;
      for (int u : comp)
        if (adjacent(v, u)) out.push_back(u);
      return out;
    };

    int triple = 0, dbl = 0;
    for (size_t i = 0; i < comp.size(); ++i)
      for (size_t j = i + 1; j < comp.size(); ++j) {
        int m = edge_mult(comp[i], comp[j]);
        if (m == 3) ++triple;
        if (m == 2) ++dbl;
      }

    if (triple) {
      if (n != 2) throw std::logic_error("bad G2 sub-diagram");
      int a = comp[0], b = comp[1];
      if (d_[a] > d_[b]) std::swap(a, b);  // short node first
      return {'G', {a, b}};
    }

    int forks = 0, fork_node = -1;
    for (int v : comp) {
      int dv = deg(v);
      if (dv > 3) throw std::logic_error("node of degree > 3 in sub-diagram");
      if (dv == 3) {
        ++forks;
        fork_node = v;
      }
    }
    if (forks > 1) throw std::logic_error("two forks in sub-diagram");

    if (forks == 0) {
      // a path; order it from one end
      std::vector<int> ends;
      for (int v : comp)
        if (deg(v) == 1) ends.push_back(v);
      if (ends.size() != 2) throw std::logic_error("bad path sub-diagram");
      auto walk = [&](int start) {
        std::vector<int> order = {start};
        int prev = -1, cur = start;
        while (static_cast<int>(order.size()) < n) {
          for (int u : neighbours(cur))
            if (u != prev) {
              order.push_back(u);
              prev = cur;
              cur = u;
              break;
            }
        }
        return order;
      };
      std::vector<int> order = walk(std::min(ends[0], ends[1]));
      if (dbl == 0) return {'A', order};
      if (dbl > 1) throw std::logic_error("two double edges in sub-diagram");
      int pos = -1;
      for (int i = 0; i + 1 < n; ++i)
        if (edge_mult(order[i], order[i + 1]) == 2) pos = i;
      if (pos == n - 2 || pos == 0) {
        if (pos == 0) std::reverse(order.begin(), order.end());
        // double edge at the end: B if the last node is short, C if long
        if (n == 2) {
          if (d_[order[0]] < d_[order[1]]) std::reverse(order.begin(), order.end());
          return {'B', order};
        }
        if (d_[order[n - 1]] < d_[order[n - 2]]) return {'B', order};
        return {'C', order};
      }
      // interior double edge: F4
      if (n != 4 || pos != 1) throw std::logic_error("bad double-edge sub-diagram");
      if (d_[order[0]] < d_[order[3]]) std::reverse(order.begin(), order.end());
      return {'F', order};
    }

    // one fork: D or E
    std::vector<std::vector<int>> branches;
    for (int u : neighbours(fork_node)) {
      std::vector<int> br = {u};
      int prev = fork_node, cur = u;
      while (true) {
        int nxt = -1;
        for (int v : neighbours(cur))
          if (v != prev) nxt = v;
        if (nxt < 0) break;
        br.push_back(nxt);
        prev = cur;
        cur = nxt;
      }
      branches.push_back(std::move(br));
    }
    std::sort(branches.begin(), branches.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a[0] < b[0];
              });
    size_t l1 = branches[0].size(), l2 = branches[1].size();
    if (l1 == 1 && l2 == 1) {
      // D_n: long branch reversed, then fork node, then the two leaves
      std::vector<int> order(branches[2].rbegin(), branches[2].rend());
      order.push_back(fork_node);
      int leaf_a = branches[0][0], leaf_b = branches[1][0];
      order.push_back(std::min(leaf_a, leaf_b));
      order.push_back(std::max(leaf_a, leaf_b));
      return {'D', order};
    }
    if (l1 == 1 && l2 == 2) {
      // E_n; branches[1] and branches[2] have sizes 2 and >= 2
      const auto& arm2 = branches[1];
      const auto& arm_long = branches[2];
      std::vector<int> order = {arm2[1], branches[0][0], arm2[0], fork_node};
      for (int v : arm_long) order.push_back(v);
      if (order.size() < 6 || order.size() > 8) throw std::logic_error("bad E sub-diagram");
      return {'E', order};
    }
    throw std::logic_error("unrecognized fork sub-diagram");
  }

  DynkinDiagram diagram_;
  std::vector<IntVec> cartan_;
  std::vector<Rat> d_;
  std::vector<RootVector> positive_roots_;
  std::set<IntVec> root_set_;
  RatMat inv_cartan_t_;
};

}  // namespace sphere
