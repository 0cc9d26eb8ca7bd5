#ifndef EQUILAB_INTMAT_HPP
#define EQUILAB_INTMAT_HPP

#include <Eigen/Dense>

#include "equilab/common.hpp"

// Exact integer / modular linear algebra on dense Eigen matrices.
// Everything here is deterministic; no floating point anywhere.

namespace equilab {

using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

// Overflow-safe helpers (moduli can approach 2^57, so products need 128 bits).
Int mod_reduce(Int a, Int m);              // representative in [0, m); m == 0 passes a through
Int mul_mod(Int a, Int b, Int m);          // (a*b) mod m via __int128; m == 0 -> plain product (checked)
Int pow_mod(Int base, Int exp, Int m);
Int gcd_int(Int a, Int b);

struct SmithForm {
  IntMat s;  // diagonal, d_1 | d_2 | ..., nonnegative
  IntMat u;  // unimodular, u * a * v == s
  IntMat v;  // unimodular
  int rank = 0;
};

// Smith normal form with transform tracking. Deterministic pivoting.
SmithForm smith_normal_form(const IntMat& a);

// Basis of { x in Z^n : a x = 0 } as matrix columns (saturated lattice).
IntMat integer_kernel(const IntMat& a);

// Unique solution of b x = c over Z where b has full column rank.
// Throws DomainError when no integral solution exists.
IntMat solve_exact(const IntMat& b, const IntMat& c);

// Exact determinant (Bareiss fraction-free elimination).
Int det_exact(IntMat a);

// Row-reduce a copy of `a` mod prime p; returns rank.
int rank_mod_p(IntMat a, Int p);

// Basis of the nullspace of `a` mod prime p, as matrix columns with
// entries in [0, p). Deterministic echelon pivoting.
IntMat nullspace_mod_p(IntMat a, Int p);

}  // namespace equilab

#endif
