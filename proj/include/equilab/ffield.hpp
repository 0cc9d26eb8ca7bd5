#ifndef EQUILAB_FFIELD_HPP
#define EQUILAB_FFIELD_HPP

#include <utility>
#include <vector>

#include "equilab/intmat.hpp"

namespace equilab {

bool is_prime(Int n);
// (p, e) with n = p^e; DomainError when n is not a prime power >= 2
std::pair<Int, int> prime_power_split(Int n);

// lexicographically least monic irreducible of degree m over F_p,
// coefficients constant-first, length m+1
std::vector<Int> canonical_irreducible(Int p, int m);

// F_{p^m} in the polynomial representation modulo the canonical irreducible.
// Elements are coefficient vectors of length m, constant coefficient first.
class FqField {
 public:
  using Elem = std::vector<Int>;

  FqField(Int p, int m, Int size_bound = Int(1) << 20);

  Int p() const { return p_; }
  int m() const { return m_; }
  Int size() const { return size_; }
  const std::vector<Int>& modulus() const { return modulus_; }

  Elem zero() const { return Elem(m_, 0); }
  Elem one() const;
  Elem from_index(Int idx) const;  // base-p digits, constant first
  Int to_index(const Elem& a) const;
  bool is_zero(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;  // DomainError on zero
  Elem pow(const Elem& a, Int e) const;
  Elem frobenius(const Elem& a) const { return pow_p(a, 1); }
  Elem pow_p(const Elem& a, int k) const;  // a^(p^k)

 private:
  Int p_;
  int m_;
  Int size_;
  std::vector<Int> modulus_;
};

// norm and trace from F_{p^m} down to the subfield of degree a | m; both
// outputs are Frobenius^a-fixed elements of the big field
std::pair<FqField::Elem, FqField::Elem> norm_and_trace(const FqField& f, int sub_degree,
                                                       const FqField::Elem& x);

// canonically least theta whose Frobenius orbit is an F_p-basis; p^n <= 2^16
FqField::Elem normal_basis_element(Int p, int n);

// factor structure of F_{p^a} ⊗_{F_p} F_{p^b}: distinct-degree factorization
// of the canonical degree-a irreducible over F_{p^b}, reported as pairs
// (field degree over F_p, multiplicity), cross-checked against gcd/lcm
std::vector<std::pair<int, int>> tensor_decompose(Int p, int a, int b);

struct NormFormSpace {
  Int p;
  int n;  // #G, the Galois group order
  int d;  // dim_E V
  Int dimension;  // F_p-dimension of the solution space
  IntMat basis;   // columns: solutions in the (tuple, coordinate) unknowns
};

// space of Galois-equivariant twisted-multilinear forms on V^{x G}, V of
// E-dimension d over E = F_{p^n}; unknowns are values at E-basis tuples
NormFormSpace norm_form_space(Int p, int n, int d, Int unknown_bound = 4096);

}  // namespace equilab

#endif
