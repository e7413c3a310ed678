#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphere/root_system.hpp"

namespace sphere {

/// Support type of a spherical-root pattern.
enum class SupportType {
  A1xA1,
  An,
  A1Doubled,
  A3Middle,
  Bn,
  BnDoubled,
  B3Special,
  Cn,
  Dn,
  D4Special1,
  D4Special2,
  F4,
  G2Doubled,
  G2Short,
};

inline const char* to_string(SupportType t) {
  switch (t) {
    case SupportType::A1xA1: return "A1xA1";
    case SupportType::An: return "A_n";
    case SupportType::A1Doubled: return "A1-doubled";
    case SupportType::A3Middle: return "A3-middle";
    case SupportType::Bn: return "B_n";
    case SupportType::BnDoubled: return "B_n-doubled";
    case SupportType::B3Special: return "B3-special";
    case SupportType::Cn: return "C_n";
    case SupportType::Dn: return "D_n";
    case SupportType::D4Special1: return "D4-special-1";
    case SupportType::D4Special2: return "D4-special-2";
    case SupportType::F4: return "F4";
    case SupportType::G2Doubled: return "G2-doubled";
    case SupportType::G2Short: return "G2-short";
  }
  return "?";
}

/// A pattern instance: the root-lattice vector, its support type, and the
/// pattern nodes in local Bourbaki order (for B types the short root is
/// last; for D types the doubled tail comes first, then the two fork legs).
struct CandidateRoot {
  RootVector vec;
  SupportType type;
  std::vector<int> local_nodes;

  friend bool operator<(const CandidateRoot& a, const CandidateRoot& b) {
    return a.vec < b.vec;
  }
  friend bool operator==(const CandidateRoot& a, const CandidateRoot& b) {
    return a.vec == b.vec;
  }
};

namespace detail {

/// Unique tree path between two nodes of the same diagram component.
inline std::vector<int> tree_path(const RootSystem& rs, int u, int v) {
  const int n = rs.rank();
  std::vector<int> prev(n, -2);
  std::vector<int> stack = {u};
  prev[u] = -1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (x == v) break;
    for (int y = 0; y < n; ++y)
      if (rs.adjacent(x, y) && prev[y] == -2) {
        prev[y] = x;
        stack.push_back(y);
      }
  }
  std::vector<int> path;
  for (int x = v; x != -1; x = prev[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

inline RootVector pattern_vec(int rank, const std::vector<std::pair<int, Int>>& coeffs) {
  IntVec c(rank, 0);
  for (auto [node, k] : coeffs) c[node] += k;
  return RootVector(std::move(c));
}

}  // namespace detail

/// Instantiate every candidate pattern on every eligible sub-diagram.
/// The result is duplicate-free and sorted by vector.
inline std::vector<CandidateRoot> enumerate_candidates(const RootSystem& rs) {
  const int n = rs.rank();
  std::vector<CandidateRoot> out;
  auto add = [&](RootVector v, SupportType t, std::vector<int> local) {
    out.push_back({std::move(v), t, std::move(local)});
  };

  // 2a on every node
  for (int i = 0; i < n; ++i)
    add(detail::pattern_vec(n, {{i, 2}}), SupportType::A1Doubled, {i});

  // a + a' on orthogonal pairs
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!rs.adjacent(i, j))
        add(detail::pattern_vec(n, {{i, 1}, {j, 1}}), SupportType::A1xA1, {i, j});

  // path-shaped patterns
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v || rs.diagram().component_of(u) != rs.diagram().component_of(v)) continue;
      std::vector<int> path = detail::tree_path(rs, u, v);
      const int k = static_cast<int>(path.size());
      if (k < 2) continue;
      bool interior_single = true;
      for (int t = 0; t + 2 < k; ++t)
        if (rs.edge_mult(path[t], path[t + 1]) != 1) interior_single = false;
      if (!interior_single) continue;
      const int last_mult = rs.edge_mult(path[k - 2], path[k - 1]);

      if (last_mult == 1) {
        if (u > v) continue;  // each A-chain once, from its smaller end
        std::vector<std::pair<int, Int>> ones;
        for (int x : path) ones.emplace_back(x, 1);
        add(detail::pattern_vec(n, ones), SupportType::An, path);
        if (k == 3)
          add(detail::pattern_vec(n, {{path[0], 1}, {path[1], 2}, {path[2], 1}}),
              SupportType::A3Middle, path);
      } else if (last_mult == 2 && rs.sym(path[k - 1]) < rs.sym(path[k - 2])) {
        // type B sub-diagram: short root at the far end
        std::vector<std::pair<int, Int>> ones, twos;
        for (int x : path) {
          ones.emplace_back(x, 1);
          twos.emplace_back(x, 2);
        }
        add(detail::pattern_vec(n, ones), SupportType::Bn, path);
        add(detail::pattern_vec(n, twos), SupportType::BnDoubled, path);
        if (k == 3)
          add(detail::pattern_vec(n, {{path[0], 1}, {path[1], 2}, {path[2], 3}}),
              SupportType::B3Special, path);
      } else if (last_mult == 2 && k >= 3) {
        // type C sub-diagram: long root at the far end
        std::vector<std::pair<int, Int>> cs = {{path[0], 1}, {path[k - 1], 1}};
        for (int t = 1; t + 1 < k; ++t) cs.emplace_back(path[t], 2);
        add(detail::pattern_vec(n, cs), SupportType::Cn, path);
      }
    }
  }

  // type D sub-diagrams: a fork with two legs and a doubled tail
  for (int f = 0; f < n; ++f) {
    std::vector<int> nb;
    for (int j = 0; j < n; ++j)
      if (rs.adjacent(f, j) && rs.edge_mult(f, j) == 1) nb.push_back(j);
    if (nb.size() < 3) continue;
    for (size_t a = 0; a < nb.size(); ++a) {
      for (size_t b = a + 1; b < nb.size(); ++b) {
        for (int t : nb) {
          if (t == nb[a] || t == nb[b]) continue;
          // extend the tail f -> t as far as desired along single edges
          std::vector<int> tail = {t};
          while (true) {
            std::vector<std::pair<int, Int>> coeffs = {{f, 2}, {nb[a], 1}, {nb[b], 1}};
            std::vector<int> local;
            for (auto it = tail.rbegin(); it != tail.rend(); ++it) {
              coeffs.emplace_back(*it, 2);
              local.push_back(*it);
            }
            local.push_back(f);
            local.push_back(std::min(nb[a], nb[b]));
            local.push_back(std::max(nb[a], nb[b]));
            SupportType type = SupportType::Dn;
            if (tail.size() == 1) {
              std::vector<int> legs = {tail[0], nb[a], nb[b]};
              std::sort(legs.begin(), legs.end());
              if (tail[0] == legs[1]) type = SupportType::D4Special1;
              else if (tail[0] == legs[2]) type = SupportType::D4Special2;
            }
            add(detail::pattern_vec(n, coeffs), type, local);
            // extend the tail; a Dynkin component has a single branch node,
            // so the continuation away from the fork is unique if it exists
            int end = tail.back(), prev = tail.size() > 1 ? tail[tail.size() - 2] : f;
            int nxt = -1;
            for (int y = 0; y < n; ++y)
              if (y != prev && y != f && rs.adjacent(end, y) && rs.edge_mult(end, y) == 1)
                nxt = y;
            if (nxt < 0) break;
            tail.push_back(nxt);
          }
        }
      }
    }
  }

  // exceptional components
  for (const auto& c : rs.diagram().components()) {
    const int f = c.first;
    if (c.family == 'F') {
      add(detail::pattern_vec(n, {{f, 1}, {f + 1, 2}, {f + 2, 3}, {f + 3, 2}}),
          SupportType::F4, {f, f + 1, f + 2, f + 3});
    } else if (c.family == 'G') {
      add(detail::pattern_vec(n, {{f, 1}, {f + 1, 1}}), SupportType::G2Short, {f, f + 1});
      add(detail::pattern_vec(n, {{f, 4}, {f + 1, 2}}), SupportType::G2Doubled, {f, f + 1});
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](const CandidateRoot& a, const CandidateRoot& b) {
                          return a.vec == b.vec;
                        }),
            out.end());
  return out;
}

/// Recognize an arbitrary root-lattice vector as a candidate pattern.
inline std::optional<CandidateRoot> classify_root(const RootSystem& rs, const RootVector& v) {
  // candidate vectors determine their pattern uniquely on a fixed diagram
  static thread_local std::map<std::string, std::map<IntVec, CandidateRoot>> cache;
  auto& table = cache[rs.diagram().name()];
  if (table.empty())
    for (auto& c : enumerate_candidates(rs)) table.emplace(c.vec.c, c);
  auto it = table.find(v.c);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace sphere
