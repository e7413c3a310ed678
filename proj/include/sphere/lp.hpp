#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "sphere/linalg.hpp"

namespace sphere {

/// Exact feasibility for systems G x >= h over free rational variables.
/// Fourier-Motzkin elimination for small variable counts, exact simplex
/// above that; both return a feasible point when one exists.

namespace lp_detail {

struct Row {
  RatVec a;
  Rat b;  // a . x >= b
};

inline Row normalize(Row r) {
  Rat scale(0);
  for (const Rat& x : r.a)
    if (!x.is_zero()) {
      Rat ax = abs(x);
      if (scale.is_zero() || ax > scale) scale = ax;
    }
  if (scale.is_zero()) scale = r.b.is_zero() ? Rat(1) : abs(r.b);
  if (!scale.is_zero()) {
    for (Rat& x : r.a) x /= scale;
    r.b /= scale;
  }
  return r;
}

inline std::vector<Rat> row_key(const Row& r) {
  std::vector<Rat> k = r.a;
  k.push_back(r.b);
  return k;
}

}  // namespace lp_detail

/// Fourier-Motzkin with back substitution.
inline std::optional<RatVec> fourier_motzkin_point(const RatMat& g, const RatVec& h) {
  using lp_detail::Row;
  const int n = g.empty() ? 0 : static_cast<int>(g[0].size());
  std::vector<Row> sys;
  for (size_t i = 0; i < g.size(); ++i) sys.push_back(lp_detail::normalize({g[i], h[i]}));

  // levels[k]: the system while variables 0..k are still alive
  std::vector<std::vector<Row>> levels(n);
  for (int k = n - 1; k >= 0; --k) {
    levels[k] = sys;
    std::vector<Row> pos, neg, zero;
    for (const auto& r : sys) {
      int s = r.a[k].sign();
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else zero.push_back(r);
    }
    std::set<std::vector<Rat>> seen;
    std::vector<Row> next;
    auto push = [&](Row r) {
      r = lp_detail::normalize(std::move(r));
      if (seen.insert(lp_detail::row_key(r)).second) next.push_back(std::move(r));
    };
    for (const auto& r : zero) push(r);
    for (const auto& p : pos)
      for (const auto& q : neg) {
        // (-q_k) * p + p_k * q eliminates x_k
        Rat cp = -q.a[k], cq = p.a[k];
        Row r;
        r.a.resize(n, Rat(0));
        for (int j = 0; j < n; ++j) r.a[j] = cp * p.a[j] + cq * q.a[j];
        r.b = cp * p.b + cq * q.b;
        push(std::move(r));
      }
    sys = std::move(next);
  }
  for (const auto& r : sys)
    if (r.b.sign() > 0) return std::nullopt;  // 0 >= positive

  RatVec x(n, Rat(0));
  for (int k = 0; k < n; ++k) {
    bool has_lo = false, has_hi = false;
    Rat lo, hi;
    for (const auto& r : levels[k]) {
      int s = r.a[k].sign();
      if (s == 0) continue;
      Rat rest = r.b;
      for (int j = 0; j < k; ++j) rest -= r.a[j] * x[j];
      // coefficients for variables > k vanished at this level by construction
      Rat bound = rest / r.a[k];
      if (s > 0) {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      }
    }
    if (has_lo) x[k] = lo;
    else if (has_hi) x[k] = hi < Rat(0) ? hi : Rat(0);
    else x[k] = Rat(0);
  }
  return x;
}

/// Phase-one exact simplex (Bland's rule) for G x >= h, x free.
inline std::optional<RatVec> simplex_point(const RatMat& g, const RatVec& h) {
  const int m = static_cast<int>(g.size());
  const int n = g.empty() ? 0 : static_cast<int>(g[0].size());
  // free x -> x = u - v with u, v >= 0; slack s >= 0: G(u - v) - s = h
  // columns: u (n), v (n), s (m), artificial (m)
  const int cols = 2 * n + 2 * m;
  RatMat tab(m, RatVec(cols + 1, Rat(0)));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    int sgn = h[i].sign() >= 0 ? 1 : -1;
    for (int j = 0; j < n; ++j) {
      tab[i][j] = Rat(sgn) * g[i][j];
      tab[i][n + j] = Rat(-sgn) * g[i][j];
    }
    tab[i][2 * n + i] = Rat(-sgn);
    tab[i][2 * n + m + i] = Rat(1);
    tab[i][cols] = Rat(sgn) * h[i];
    basis[i] = 2 * n + m + i;
  }
  // objective: minimize sum of artificials; reduced costs
  RatVec cost(cols + 1, Rat(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= cols; ++j) cost[j] += tab[i][j];

  while (true) {
    int enter = -1;
    for (int j = 0; j < 2 * n + m; ++j)
      if (cost[j].sign() > 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (tab[i][enter].sign() <= 0) continue;
      Rat ratio = tab[i][cols] / tab[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return std::nullopt;  // unbounded phase-one: cannot happen
    Rat piv = tab[leave][enter];
    for (int j = 0; j <= cols; ++j) tab[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter].is_zero()) continue;
      Rat f = tab[i][enter];
      for (int j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
    }
    Rat f = cost[enter];
    for (int j = 0; j <= cols; ++j) cost[j] -= f * tab[leave][j];
    basis[leave] = enter;
  }
  if (cost[cols].sign() != 0) return std::nullopt;  // artificials stuck positive

  RatVec x(n, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] += tab[i][cols];
    else if (basis[i] < 2 * n) x[basis[i] - n] -= tab[i][cols];
  }
  return x;
}

/// Dispatch: Fourier-Motzkin up to 8 variables, simplex beyond.
inline std::optional<RatVec> feasible_point(const RatMat& g, const RatVec& h) {
  const int n = g.empty() ? 0 : static_cast<int>(g[0].size());
  if (n <= 8) return fourier_motzkin_point(g, h);
  return simplex_point(g, h);
}

}  // namespace sphere
