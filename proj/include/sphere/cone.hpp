#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "sphere/linalg.hpp"

namespace sphere {

/// Polyhedral-cone helpers for the monoid {c in N^n : A c = 0}:
/// extreme rays, a degree-bounded Hilbert basis with a completeness
/// certificate, and the lattice-basis test used for quotient systems.

/// Primitive generators of the extreme rays of {x >= 0 : A x = 0}.
inline IntMat extreme_rays(const IntMat& a, int n) {
  IntMat kernel = integer_kernel(a, n);
  const int d = static_cast<int>(kernel.size());
  if (d == 0) return {};

  // constraint rows in kernel coordinates: x_j = sum_i u_i kernel[i][j] >= 0
  RatMat rows(n, RatVec(d));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < d; ++i) rows[j][i] = Rat(kernel[i][j]);

  auto from_u = [&](const RatVec& u) {
    RatVec x(n, Rat(0));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < d; ++i) x[j] += u[i] * Rat(kernel[i][j]);
    return x;
  };
  auto to_primitive_int = [&](const RatVec& x) {
    Int lcm = 1;
    for (const Rat& v : x) lcm = lcm / std::gcd(lcm, v.den()) * v.den();
    IntVec iv(n);
    for (int j = 0; j < n; ++j) iv[j] = x[j].num() * (lcm / x[j].den());
    return primitive(iv);
  };

  std::set<IntVec> rays;
  if (d == 1) {
    for (int sgn : {1, -1}) {
      RatVec x = from_u({Rat(sgn)});
      bool nonneg = true, nonzero = false;
      for (const Rat& v : x) {
        if (v.sign() < 0) nonneg = false;
        if (!v.is_zero()) nonzero = true;
      }
      if (nonneg && nonzero) rays.insert(to_primitive_int(x));
    }
  } else {
    // each extreme ray is determined by d-1 independent active constraints
    std::vector<int> comb;
    std::function<void(int, int)> rec = [&](int start, int need) {
      if (need == 0) {
        RatMat sub;
        for (int j : comb) sub.push_back(rows[j]);
        auto ns = nullspace(sub);
        if (ns.size() != 1) return;
        for (int sgn : {1, -1}) {
          RatVec u = ns[0];
          if (sgn < 0)
            for (Rat& v : u) v = -v;
          RatVec x = from_u(u);
          bool nonneg = true, nonzero = false;
          for (const Rat& v : x) {
            if (v.sign() < 0) nonneg = false;
            if (!v.is_zero()) nonzero = true;
          }
          if (nonneg && nonzero) rays.insert(to_primitive_int(x));
        }
        return;
      }
      for (int j = start; j <= n - need; ++j) {
        comb.push_back(j);
        rec(j + 1, need - 1);
        comb.pop_back();
      }
    };
    rec(0, d - 1);
  }
  return IntMat(rays.begin(), rays.end());
}

/// Hilbert basis of {c in N^n : A c = 0} by degree-bounded enumeration.
/// Completeness: every indecomposable lies in a fundamental parallelepiped
/// of extreme rays, so its total degree is at most the sum of the rays'
/// degrees; the enumeration covers that bound exactly.  Returns nullopt
/// when the projected work exceeds `work_cap` states.
inline std::optional<IntMat> hilbert_basis(const IntMat& a, int n,
                                           long long work_cap = 4'000'000) {
  IntMat rays = extreme_rays(a, n);
  if (rays.empty()) return IntMat{};
  long long bound = 0;
  for (const auto& r : rays)
    for (Int v : r) bound += v;

  // solve A c = 0 in rref form: pivot coordinates as functions of the rest
  RatMat m;
  for (const auto& row : a) {
    RatVec r(n);
    for (int j = 0; j < n; ++j) r[j] = Rat(row[j]);
    m.push_back(std::move(r));
  }
  std::vector<int> piv = rref(m);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_piv[c]) free_cols.push_back(c);

  std::vector<IntVec> members;  // sorted by total degree
  long long work = 0;
  IntVec cur(n, 0);
  std::function<bool(size_t, long long)> enumerate = [&](size_t fi, long long used) -> bool {
    if (++work > work_cap) return false;
    if (fi == free_cols.size()) {
      // back out pivot coordinates
      IntVec c = cur;
      long long total = used;
      for (size_t k = 0; k < piv.size(); ++k) {
        Rat v(0);
        for (int fc : free_cols) v -= m[k][fc] * Rat(c[fc]);
        if (!v.is_integer() || v.sign() < 0) return true;
        c[piv[k]] = v.num();
        total += v.num();
        if (total > bound) return true;
      }
      if (total > 0) members.push_back(std::move(c));
      return true;
    }
    for (long long v = 0; used + v <= bound; ++v) {
      cur[free_cols[fi]] = v;
      if (!enumerate(fi + 1, used + v)) return false;
      }
    cur[free_cols[fi]] = 0;
    return true;
  };
  if (!enumerate(0, 0)) return std::nullopt;

  std::sort(members.begin(), members.end(), [](const IntVec& x, const IntVec& y) {
    long long sx = 0, sy = 0;
    for (Int v : x) sx += v;
    for (Int v : y) sy += v;
    if (sx != sy) return sx < sy;
    return x < y;
  });
  IntMat basis;
  auto leq = [](const IntVec& x, const IntVec& y) {
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  };
  for (const auto& c : members) {
    bool decomposable = false;
    for (const auto& h : basis)
      if (h != c && leq(h, c)) {
        decomposable = true;
        break;
      }
    if (!decomposable) basis.push_back(c);
  }
  return basis;
}

/// Decide whether the monoid {c in N^n : A c = 0} is freely generated by
/// its extreme rays and they form a lattice basis of the integer kernel:
/// the cone must be simplicial and the primitive rays unimodular in
/// kernel-lattice coordinates.  On success the rays are the full Hilbert
/// basis.
struct MonoidBasis {
  bool is_basis = false;
  IntMat rays;      // primitive extreme rays (the basis when is_basis)
  int lattice_rank = 0;
  std::string reason;
};

inline MonoidBasis monoid_basis(const IntMat& a, int n) {
  MonoidBasis out;
  IntMat kernel = integer_kernel(a, n);
  out.lattice_rank = static_cast<int>(kernel.size());
  out.rays = extreme_rays(a, n);
  if (static_cast<int>(out.rays.size()) != out.lattice_rank) {
    out.reason = "cone has " + std::to_string(out.rays.size()) + " extreme rays, lattice rank " +
                 std::to_string(out.lattice_rank);
    return out;
  }
  if (out.lattice_rank == 0) {
    out.is_basis = true;
    return out;
  }
  // determinant of the rays in kernel coordinates
  RatMat coords;
  for (const auto& r : out.rays) {
    auto c = lattice_coords(kernel, r);
    if (!c) {
      out.reason = "extreme ray outside the integer kernel";
      return out;
    }
    RatVec row(c->size());
    for (size_t i = 0; i < c->size(); ++i) row[i] = Rat((*c)[i]);
    coords.push_back(std::move(row));
  }
  Rat det(1);
  {
    RatMat mm = coords;
    const int d = out.lattice_rank;
    for (int c = 0; c < d; ++c) {
      int p = -1;
      for (int i = c; i < d; ++i)
        if (!mm[i][c].is_zero()) {
          p = i;
          break;
        }
      if (p < 0) {
        det = Rat(0);
        break;
      }
      if (p != c) {
        std::swap(mm[p], mm[c]);
        det = -det;
      }
      det *= mm[c][c];
      for (int i = c + 1; i < d; ++i) {
        Rat f = mm[i][c] / mm[c][c];
        for (int j = c; j < d; ++j) mm[i][j] -= f * mm[c][j];
      }
    }
  }
  if (abs(det) != Rat(1)) {
    out.reason = "rays generate a sublattice of index " + abs(det).str();
    return out;
  }
  out.is_basis = true;
  return out;
}

}  // namespace sphere
