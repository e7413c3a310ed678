#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <set>
#include <vector>

#include "sphere/root_system.hpp"
#include "sphere/weight_monoid.hpp"

namespace sphere::testing {

/// All positive roots as the Weyl-orbit of the simple roots: saturate the
/// orbit under the simple reflections s_j(v) = v - <alpha_j^vee, v> alpha_j
/// and keep the vectors with nonnegative coordinates.  Independent of the
/// closure algorithm used by RootSystem.
inline std::set<IntVec> reflection_orbit_positive_roots(const RootSystem& rs) {
  const int n = rs.rank();
  std::set<IntVec> all;
  std::vector<IntVec> frontier;
  for (int i = 0; i < n; ++i) {
    IntVec v(n, 0);
    v[i] = 1;
    all.insert(v);
    frontier.push_back(v);
  }
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const auto& v : frontier) {
      for (int j = 0; j < n; ++j) {
        Int p = 0;
        for (int i = 0; i < n; ++i) p += v[i] * rs.cartan(i, j);
        IntVec w = v;
        w[j] -= p;
        if (all.insert(w).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  std::set<IntVec> positive;
  for (const auto& v : all) {
    bool nonneg = true, nonzero = false;
    for (Int x : v) {
      if (x < 0) nonneg = false;
      if (x != 0) nonzero = true;
    }
    if (nonneg && nonzero) positive.insert(v);
  }
  return positive;
}

/// Tangent-space weights for the rank-one group and a single generator
/// k*w1, computed directly from the definition with explicit matrices on
/// V(k): basis v_0..v_k with F v_j = v_{j+1}, E v_j = j(k-j+1) v_{j-1}.
///
/// g.v_0 is spanned by v_0 and v_1, the stabilizer of v_0 in the Lie
/// algebra is spanned by E, and a class [v_j] is fixed iff E v_j lands in
/// g.v_0.  The adjusted torus weight of [v_j] is 2j*w1 = j*alpha; only
/// weights inside Z*Gamma count.
inline std::vector<IntVec> sl2_tangent_weights(Int k) {
  std::vector<IntVec> weights;
  for (Int j = 2; j <= k; ++j) {
    // E v_j = j(k-j+1) v_{j-1}; in the quotient V/<v_0, v_1> the class of
    // v_{j-1} vanishes iff j - 1 <= 1
    bool fixed = (j * (k - j + 1) == 0) || (j - 1 <= 1);
    if (!fixed) continue;
    // weight as element of the root lattice: j * alpha needs 2j divisible
    // by... expressed in the weight lattice it is 2j * w1; membership in
    // Z<k*w1> requires k | 2j
    if ((2 * j) % k != 0) continue;
    weights.push_back({j});  // root coordinates: j * alpha_1
  }
  return weights;
}

}  // namespace sphere::testing
