#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sphere {

/// One connected component of a Dynkin diagram, with Bourbaki numbering.
/// `first` is the offset of the component's node 1 in the global labeling.
struct DynkinComponent {
  char family;  // 'A'..'G'
  int rank;
  int first;

  friend bool operator==(const DynkinComponent& a, const DynkinComponent& b) {
    return a.family == b.family && a.rank == b.rank;
  }
};

/// A semisimple Dynkin diagram: an ordered list of components with globally
/// consecutive node labels.  Low-rank coincidences are canonicalized at parse
/// time (C2 -> B2, D3 -> A3) and the node relabeling is recorded.
class DynkinDiagram {
public:
  DynkinDiagram() = default;

  explicit DynkinDiagram(std::vector<std::pair<char, int>> comps) {
    int at = 0;
    for (auto [fam, rk] : comps) {
      check_bounds(fam, rk);
      components_.push_back({fam, rk, at});
      at += rk;
    }
    rank_ = at;
    input_relabeling_.resize(rank_);
    std::iota(input_relabeling_.begin(), input_relabeling_.end(), 0);
  }

  /// Parse a diagram literal such as "A3", "b4", "A3xA3", "E7".
  /// Components are separated by 'x'; case-insensitive.
  static DynkinDiagram parse(std::string_view text) {
    std::vector<std::pair<char, int>> comps;
    std::vector<bool> flipped;  // per component: C2 canonicalized to B2
    std::vector<bool> d3;       // per component: D3 canonicalized to A3
    size_t i = 0;
    while (i < text.size()) {
      char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
      if (fam < 'A' || fam > 'G')
        throw std::invalid_argument("bad diagram family in '" + std::string(text) + "'");
      ++i;
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw std::invalid_argument("missing rank in '" + std::string(text) + "'");
      int rk = std::stoi(std::string(text.substr(i, j - i)));
      i = j;
      bool flip = false, from_d3 = false;
      if (fam == 'C' && rk == 2) {
        fam = 'B';
        flip = true;  // C2 = B2 with the two nodes exchanged
      } else if (fam == 'D' && rk == 3) {
        fam = 'A';
        from_d3 = true;  // D3 = A3, nodes (2,1,3) -> (1,2,3)
      }
      check_bounds(fam, rk);
      comps.emplace_back(fam, rk);
      flipped.push_back(flip);
      d3.push_back(from_d3);
      if (i < text.size()) {
        char sep = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
        if (sep != 'x') throw std::invalid_argument("expected 'x' between components");
        ++i;
        if (i == text.size()) throw std::invalid_argument("trailing separator");
      }
    }
    if (comps.empty()) throw std::invalid_argument("empty diagram");
    DynkinDiagram d(comps);
    for (size_t k = 0; k < comps.size(); ++k) {
      int at = d.components_[k].first;
      if (flipped[k]) std::swap(d.input_relabeling_[at], d.input_relabeling_[at + 1]);
      if (d3[k]) {
        // D3 input labels (1,2,3): node 1 is the chain node, 2 and 3 the fork.
        // A3 order: (2,1,3).
        d.input_relabeling_[at] = at + 1;
        d.input_relabeling_[at + 1] = at;
        d.input_relabeling_[at + 2] = at + 2;
      }
    }
    return d;
  }

  const std::vector<DynkinComponent>& components() const { return components_; }
  int rank() const { return rank_; }

  /// input node index -> canonical node index (identity unless canonicalized)
  const std::vector<int>& input_relabeling() const { return input_relabeling_; }
  bool relabeled() const {
    for (int i = 0; i < rank_; ++i)
      if (input_relabeling_[i] != i) return true;
    return false;
  }

  std::string name() const {
    std::string s;
    for (size_t k = 0; k < components_.size(); ++k) {
      if (k) s += 'x';
      s += components_[k].family;
      s += std::to_string(components_[k].rank);
    }
    return s;
  }

  int component_of(int node) const {
    for (size_t k = 0; k < components_.size(); ++k)
      if (node >= components_[k].first && node < components_[k].first + components_[k].rank)
        return static_cast<int>(k);
    throw std::out_of_range("node out of range");
  }

  friend bool operator==(const DynkinDiagram& a, const DynkinDiagram& b) {
    return a.components_ == b.components_;
  }
  friend bool operator!=(const DynkinDiagram& a, const DynkinDiagram& b) { return !(a == b); }

  /// All diagram automorphisms as node permutations (identity first).
  /// Per component: A_n (n>=2) reversal, D_n fork swap, D4 full S3 on the
  /// legs, E6 reversal; plus permutations of isomorphic components.
  std::vector<std::vector<int>> automorphisms() const {
    std::vector<std::vector<std::vector<int>>> per_comp;
    for (const auto& c : components_) per_comp.push_back(component_autos(c));

    // group component indices by isomorphism type
    std::map<std::pair<char, int>, std::vector<int>> groups;
    for (size_t k = 0; k < components_.size(); ++k)
      groups[{components_[k].family, components_[k].rank}].push_back(static_cast<int>(k));

    std::vector<std::vector<int>> comp_perms = {identity_perm(static_cast<int>(components_.size()))};
    for (auto& [key, idxs] : groups) {
      (void)key;
      if (idxs.size() < 2) continue;
      std::vector<std::vector<int>> expanded;
      std::vector<int> order(idxs);
      std::sort(order.begin(), order.end());
      do {
        for (const auto& base : comp_perms) {
          std::vector<int> p = base;
          for (size_t t = 0; t < idxs.size(); ++t) p[idxs[t]] = order[t];
          expanded.push_back(std::move(p));
        }
      } while (std::next_permutation(order.begin(), order.end()));
      comp_perms = std::move(expanded);
    }

    std::vector<std::vector<int>> result;
    std::vector<size_t> choice(components_.size(), 0);
    for (const auto& cp : comp_perms) {
      std::fill(choice.begin(), choice.end(), 0);
      while (true) {
        std::vector<int> perm(rank_);
        for (size_t k = 0; k < components_.size(); ++k) {
          const auto& local = per_comp[k][choice[k]];
          int src = components_[k].first;
          int dst = components_[cp[k]].first;
          for (int t = 0; t < components_[k].rank; ++t) perm[src + t] = dst + local[t];
        }
        result.push_back(std::move(perm));
        size_t k = 0;
        while (k < components_.size() && ++choice[k] == per_comp[k].size()) choice[k++] = 0;
        if (k == components_.size()) break;
      }
    }
    std::sort(result.begin(), result.end());
    auto id = identity_perm(rank_);
    auto it = std::find(result.begin(), result.end(), id);
    if (it != result.begin() && it != result.end()) std::iter_swap(result.begin(), it);
    return result;
  }

private:
  static void check_bounds(char fam, int rk) {
    bool ok = false;
    switch (fam) {
      case 'A': ok = rk >= 1; break;
      case 'B': ok = rk >= 2; break;
      case 'C': ok = rk >= 2; break;
      case 'D': ok = rk >= 3; break;
      case 'E': ok = rk >= 6 && rk <= 8; break;
      case 'F': ok = rk == 4; break;
      case 'G': ok = rk == 2; break;
      default: ok = false;
    }
    if (!ok)
      throw std::invalid_argument(std::string("rank out of range for type ") + fam +
                                  std::to_string(rk));
  }

  static std::vector<int> identity_perm(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
  }

  static std::vector<std::vector<int>> component_autos(const DynkinComponent& c) {
    const int n = c.rank;
    std::vector<std::vector<int>> out = {identity_perm(n)};
    auto add = [&](std::vector<int> p) { out.push_back(std::move(p)); };
    if (c.family == 'A' && n >= 2) {
      std::vector<int> rev(n);
      for (int i = 0; i < n; ++i) rev[i] = n - 1 - i;
      add(rev);
    } else if (c.family == 'D') {
      if (n == 4) {
        // S3 on the legs {1,3,4} around the center node 2
        const int legs[3] = {0, 2, 3};
        int perm3[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        out.clear();
        for (auto& pr : perm3) {
          std::vector<int> p = identity_perm(n);
          for (int t = 0; t < 3; ++t) p[legs[t]] = legs[pr[t]];
          add(p);
        }
      } else if (n > 4) {
        std::vector<int> p = identity_perm(n);
        std::swap(p[n - 2], p[n - 1]);
        add(p);
      }
    } else if (c.family == 'E' && n == 6) {
      // reversal: 1<->6, 3<->5, fixes 2 and 4
      std::vector<int> p = identity_perm(n);
      std::swap(p[0], p[5]);
      std::swap(p[2], p[4]);
      add(p);
    }
    return out;
  }

  std::vector<DynkinComponent> components_;
  int rank_ = 0;
  std::vector<int> input_relabeling_;
};

}  // namespace sphere
