#include "equilab/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

namespace equilab {

Int mod_reduce(Int a, Int m) {
  if (m == 0) return a;
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int mul_mod(Int a, Int b, Int m) {
  if (m == 0) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) throw SizeError("integer overflow in exact product");
    return static_cast<Int>(p);
  }
  __int128 p = static_cast<__int128>(mod_reduce(a, m)) * mod_reduce(b, m);
  return static_cast<Int>(p % m);
}

Int pow_mod(Int base, Int exp, Int m) {
  Int r = mod_reduce(1, m);
  Int b = mod_reduce(base, m);
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1;
  }
  return r;
}

Int gcd_int(Int a, Int b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

namespace {

void check_entry(Int v) {
  constexpr Int kBig = INT64_MAX / 4;
  if (v > kBig || v < -kBig) throw SizeError("entry growth exceeds exact-arithmetic bound");
}

// dst -= q * src
void add_row_multiple(IntMat& m, int dst, int src, Int q) {
  for (int j = 0; j < m.cols(); ++j) {
    m(dst, j) -= q * m(src, j);
    check_entry(m(dst, j));
  }
}

void add_col_multiple(IntMat& m, int dst, int src, Int q) {
  for (int i = 0; i < m.rows(); ++i) {
    m(i, dst) -= q * m(i, src);
    check_entry(m(i, dst));
  }
}

// Diagonalize the trailing block of f.s starting at position `start` by
// euclidean row/column operations, tracking transforms. Returns the index
// one past the last nonzero diagonal entry.
int diagonalize_from(SmithForm& f, int start) {
  const int rows = static_cast<int>(f.s.rows());
  const int cols = static_cast<int>(f.s.cols());
  const int lim = std::min(rows, cols);
  int t = start;
  while (t < lim) {
    int pr = -1, pc = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        Int v = std::abs(f.s(i, j));
        if (v != 0 && (pr < 0 || v < best)) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;

    if (pr != t) {
      f.s.row(pr).swap(f.s.row(t));
      f.u.row(pr).swap(f.u.row(t));
    }
    if (pc != t) {
      f.s.col(pc).swap(f.s.col(t));
      f.v.col(pc).swap(f.v.col(t));
    }

    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      Int q = f.s(i, t) / f.s(t, t);
      if (q != 0) {
        add_row_multiple(f.s, i, t, q);
        add_row_multiple(f.u, i, t, q);
      }
      if (f.s(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      Int q = f.s(t, j) / f.s(t, t);
      if (q != 0) {
        add_col_multiple(f.s, j, t, q);
        add_col_multiple(f.v, j, t, q);
      }
      if (f.s(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; re-pivot this block

    if (f.s(t, t) < 0) {
      f.s.row(t) = -f.s.row(t);
      f.u.row(t) = -f.u.row(t);
    }
    ++t;
  }
  return t;
}

}  // namespace

SmithForm smith_normal_form(const IntMat& a) {
  SmithForm f;
  f.s = a;
  f.u = IntMat::Identity(a.rows(), a.rows());
  f.v = IntMat::Identity(a.cols(), a.cols());
  f.rank = diagonalize_from(f, 0);

  // Enforce d_i | d_{i+1}: fold a violating d_j into column i and
  // re-diagonalize; the diagonal decreases lexicographically, so this ends.
  bool fixed = true;
  while (fixed) {
    fixed = false;
    for (int i = 0; i + 1 < f.rank && !fixed; ++i)
      for (int j = i + 1; j < f.rank && !fixed; ++j)
        if (f.s(j, j) % f.s(i, i) != 0) {
          add_col_multiple(f.s, i, j, -1);  // col_i += col_j
          add_col_multiple(f.v, i, j, -1);
          diagonalize_from(f, i);
          fixed = true;
        }
  }
  return f;
}

IntMat integer_kernel(const IntMat& a) {
  SmithForm f = smith_normal_form(a);
  const int n = static_cast<int>(a.cols());
  const int free_cols = n - f.rank;
  IntMat k(n, free_cols);
  for (int j = 0; j < free_cols; ++j) k.col(j) = f.v.col(f.rank + j);
  return k;
}

IntMat solve_exact(const IntMat& b, const IntMat& c) {
  if (b.rows() != c.rows()) throw DomainError("solve_exact: row mismatch");
  SmithForm f = smith_normal_form(b);
  if (f.rank != b.cols()) throw DomainError("solve_exact: matrix does not have full column rank");
  IntMat uc = f.u * c;
  IntMat z(b.cols(), c.cols());
  for (int i = 0; i < b.cols(); ++i) {
    Int d = f.s(i, i);
    for (int j = 0; j < c.cols(); ++j) {
      if (uc(i, j) % d != 0) throw DomainError("solve_exact: no integral solution");
      z(i, j) = uc(i, j) / d;
    }
  }
  for (int i = static_cast<int>(b.cols()); i < uc.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j)
      if (uc(i, j) != 0) throw DomainError("solve_exact: inconsistent system");
  return f.v * z;
}

Int det_exact(IntMat a) {
  if (a.rows() != a.cols()) throw DomainError("det_exact: square matrix required");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1;
  Int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      a.row(k).swap(a.row(swap_row));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        __int128 num = static_cast<__int128>(a(i, j)) * a(k, k) -
                       static_cast<__int128>(a(i, k)) * a(k, j);
        __int128 q = num / prev;  // exact by Bareiss
        if (q > INT64_MAX || q < INT64_MIN) throw SizeError("det_exact overflow");
        a(i, j) = static_cast<Int>(q);
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

Int inv_mod_p(Int a, Int p) { return pow_mod(a, p - 2, p); }

// in-place reduced echelon form mod p; returns pivot columns
std::vector<int> echelon_mod_p(IntMat& a, Int p) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = mod_reduce(a(i, j), p);

  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(r));
    Int inv = inv_mod_p(a(r, c), p);
    for (int j = c; j < cols; ++j) a(r, j) = mul_mod(a(r, j), inv, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Int factor = a(i, c);
      for (int j = c; j < cols; ++j)
        a(i, j) = mod_reduce(a(i, j) - mul_mod(factor, a(r, j), p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank_mod_p(IntMat a, Int p) { return static_cast<int>(echelon_mod_p(a, p).size()); }

IntMat nullspace_mod_p(IntMat a, Int p) {
  const int cols = static_cast<int>(a.cols());
  std::vector<int> pivots = echelon_mod_p(a, p);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  IntMat basis = IntMat::Zero(cols, static_cast<int>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis(fc, static_cast<int>(k)) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], static_cast<int>(k)) = mod_reduce(-a(static_cast<int>(r), fc), p);
  }
  return basis;
}

}  // namespace equilab
