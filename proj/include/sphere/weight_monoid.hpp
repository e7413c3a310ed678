#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sphere/linalg.hpp"
#include "sphere/root_system.hpp"

namespace sphere {

/// The input tuple of dominant weights generating the monoid.
struct WeightTuple {
  std::shared_ptr<const RootSystem> rs;
  std::vector<Weight> weights;

  WeightTuple(std::shared_ptr<const RootSystem> rs_, std::vector<Weight> ws)
      : rs(std::move(rs_)), weights(std::move(ws)) {
    for (const auto& w : weights) {
      if (static_cast<int>(w.w.size()) != rs->rank())
        throw std::invalid_argument("weight length does not match diagram rank");
      if (!w.is_dominant()) throw std::invalid_argument("weight is not dominant");
      if (w.is_zero()) throw std::invalid_argument("zero weight rejected");
    }
  }

  int size() const { return static_cast<int>(weights.size()); }

  /// Solve sum x_i lambda_i = mu over the rationals (unique if consistent,
  /// assuming the tuple is free).
  std::optional<RatVec> coefficients(const Weight& mu) const {
    const int n = rs->rank(), s = size();
    RatMat a(n, RatVec(s));
    RatVec b(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < s; ++j) a[i][j] = Rat(weights[j].w[i]);
      b[i] = Rat(mu.w[i]);
    }
    return solve_columns(a, b);
  }

  bool in_lattice(const Weight& mu) const {
    auto x = coefficients(mu);
    if (!x) return false;
    for (const Rat& r : *x)
      if (!r.is_integer()) return false;
    return true;
  }

  bool in_monoid(const Weight& mu) const {
    auto x = coefficients(mu);
    if (!x) return false;
    for (const Rat& r : *x)
      if (!r.is_integer() || r.sign() < 0) return false;
    return true;
  }
};

/// true iff the coordinate matrix has full rank s over Q
inline bool check_free(const WeightTuple& t) {
  RatMat m;
  for (const auto& w : t.weights) {
    RatVec row(w.w.size());
    for (size_t i = 0; i < w.w.size(); ++i) row[i] = Rat(w.w[i]);
    m.push_back(std::move(row));
  }
  return rank(std::move(m)) == t.size();
}

struct SaturationResult {
  bool saturated;
  std::vector<int> witnesses;  // i -> node k_i, when saturated
  int offending = -1;          // weight with no witness, otherwise
};

/// Per-generator witness criterion: lambda_i needs a simple root touching
/// it and no other generator.
inline SaturationResult is_saturated(const WeightTuple& t) {
  SaturationResult res;
  res.saturated = true;
  const int n = t.rs->rank();
  for (int i = 0; i < t.size(); ++i) {
    int witness = -1;
    for (int k = 0; k < n && witness < 0; ++k) {
      if (t.weights[i].w[k] == 0) continue;
      bool private_node = true;
      for (int j = 0; j < t.size(); ++j)
        if (j != i && t.weights[j].w[k] != 0) private_node = false;
      if (private_node) witness = k;
    }
    if (witness < 0) {
      res.saturated = false;
      res.offending = i;
      res.witnesses.clear();
      return res;
    }
    res.witnesses.push_back(witness);
  }
  return res;
}

struct OracleResult {
  bool saturated;
  std::optional<Weight> counterexample;
};

/// Brute-force check of the definition on the box of dominant weights with
/// coordinates <= box_bound: every lattice member of the box that is
/// dominant must lie in the monoid.  The generator matrix is reduced once;
/// each box point costs one back substitution.
inline OracleResult saturation_oracle(const WeightTuple& t, Int box_bound) {
  if (t.rs->rank() > 4)
    throw std::invalid_argument("saturation_oracle: ambient rank must be <= 4");
  const int n = t.rs->rank(), s = t.size();

  // row-reduce [Lambda | I]: for free tuples the pivots are the first s
  // columns, and T mu solves Lambda x = mu with consistency rows below
  RatMat aug(n, RatVec(s + n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < s; ++j) aug[i][j] = Rat(t.weights[j].w[i]);
    aug[i][s + i] = Rat(1);
  }
  std::vector<int> piv = rref(aug);
  if (static_cast<int>(piv.size()) < s || piv[s - 1] != s - 1)
    throw std::invalid_argument("saturation_oracle: tuple is not free");

  IntVec cur(n, 0);
  while (true) {
    int k = 0;
    while (k < n && ++cur[k] > box_bound) cur[k++] = 0;
    if (k == n) break;
    bool in_lattice = true, in_monoid = true;
    for (int r = 0; r < n && in_lattice; ++r) {
      Rat y(0);
      for (int i = 0; i < n; ++i)
        if (cur[i] != 0) y += aug[r][s + i] * Rat(cur[i]);
      if (r < s) {
        if (!y.is_integer()) in_lattice = false;
        else if (y.sign() < 0) in_monoid = false;
      } else if (!y.is_zero()) {
        in_lattice = false;  // outside the rational span
      }
    }
    if (in_lattice && !in_monoid) return {false, Weight{cur}};
  }
  return {true, std::nullopt};
}

inline Int default_oracle_bound(const WeightTuple& t) {
  Int m = 0;
  for (const auto& w : t.weights)
    for (Int x : w.w) m = std::max(m, x);
  return 2 * m + t.rs->rank();
}

/// S^p: the simple roots orthogonal to every generator.
inline std::vector<int> compute_sp(const WeightTuple& t) {
  std::vector<int> sp;
  for (int k = 0; k < t.rs->rank(); ++k) {
    bool orth = true;
    for (const auto& w : t.weights)
      if (w.w[k] != 0) orth = false;
    if (orth) sp.push_back(k);
  }
  return sp;
}

}  // namespace sphere
