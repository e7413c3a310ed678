#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "sphere/rational.hpp"

namespace sphere {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

/// Row-reduce `m` in place to reduced row echelon form.
/// Returns the pivot column of each nonzero row; rank = pivots.size().
inline std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rat f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

/// Solve A x = b where the columns of A are linearly independent.
/// Returns nullopt when the system is inconsistent.
inline std::optional<RatVec> solve_columns(const RatMat& a, const RatVec& b) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  RatMat aug(rows, RatVec(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  std::vector<int> piv = rref(aug);
  RatVec x(cols, Rat(0));
  for (size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] == cols) return std::nullopt;  // pivot in the RHS column
    x[piv[k]] = aug[k][cols];
  }
  // with independent columns every column is a pivot whenever consistent
  return x;
}

/// Rational basis of the nullspace {x : A x = 0}.
inline std::vector<RatVec> nullspace(RatMat a) {
  if (a.empty()) return {};
  const int cols = static_cast<int>(a[0].size());
  std::vector<int> piv = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(cols, Rat(0));
    v[c] = Rat(1);
    for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -a[k][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace detail {

inline Int checked_mul(Int a, Int b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX || p < INT64_MIN)
    throw std::overflow_error("integer overflow");
  return static_cast<Int>(p);
}

inline Int checked_add(Int a, Int b) {
  __int128 s = static_cast<__int128>(a) + b;
  if (s > INT64_MAX || s < INT64_MIN)
    throw std::overflow_error("integer overflow");
  return static_cast<Int>(s);
}

}  // namespace detail

/// Basis of the integer kernel {x in Z^n : A x = 0} for integer A (m x n).
/// Unimodular column elimination: the kernel basis is exact, not just a
/// rational basis cleared of denominators.
inline IntMat integer_kernel(const IntMat& a_in, int n) {
  const int m = static_cast<int>(a_in.size());
  IntMat a = a_in;
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("integer_kernel: ragged matrix");
  // u: n x n unimodular, tracks column operations
  IntMat u(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;

  auto col_axpy = [&](int dst, int src, Int f) {
    // column dst -= f * column src
    for (int i = 0; i < m; ++i)
      a[i][dst] = detail::checked_add(a[i][dst], detail::checked_mul(-f, a[i][src]));
    for (int i = 0; i < n; ++i)
      u[i][dst] = detail::checked_add(u[i][dst], detail::checked_mul(-f, u[i][src]));
  };
  auto col_swap = [&](int c1, int c2) {
    for (int i = 0; i < m; ++i) std::swap(a[i][c1], a[i][c2]);
    for (int i = 0; i < n; ++i) std::swap(u[i][c1], u[i][c2]);
  };

  int lead = 0;
  for (int row = 0; row < m && lead < n; ++row) {
    // euclidean elimination across columns lead..n-1 on this row
    while (true) {
      int p = -1;
      Int best = 0;
      for (int c = lead; c < n; ++c) {
        Int v = a[row][c] < 0 ? -a[row][c] : a[row][c];
        if (v != 0 && (p < 0 || v < best)) {
          p = c;
          best = v;
        }
      }
      if (p < 0) break;  // row already zero past lead
      col_swap(lead, p);
      bool cleared = true;
      for (int c = lead + 1; c < n; ++c) {
        if (a[row][c] == 0) continue;
        Int q = a[row][c] / a[row][lead];
        col_axpy(c, lead, q);
        if (a[row][c] != 0) cleared = false;
      }
      if (cleared) {
        ++lead;
        break;
      }
    }
  }
  IntMat kernel;
  for (int c = lead; c < n; ++c) {
    IntVec v(n);
    for (int i = 0; i < n; ++i) v[i] = u[i][c];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

/// Express x over the given lattice basis (rows of `basis`, independent).
/// Returns integer coordinates when x lies in the lattice.
inline std::optional<IntVec> lattice_coords(const IntMat& basis, const IntVec& x) {
  const int d = static_cast<int>(basis.size());
  const int n = static_cast<int>(x.size());
  RatMat a(n, RatVec(d));
  RatVec b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) a[i][j] = Rat(basis[j][i]);
    b[i] = Rat(x[i]);
  }
  auto sol = solve_columns(a, b);
  if (!sol) return std::nullopt;
  IntVec out(d);
  for (int j = 0; j < d; ++j) {
    if (!(*sol)[j].is_integer()) return std::nullopt;
    out[j] = (*sol)[j].num();
  }
  return out;
}

inline IntVec primitive(IntVec v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

}  // namespace sphere
