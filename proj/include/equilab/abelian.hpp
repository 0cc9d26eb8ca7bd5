#ifndef EQUILAB_ABELIAN_HPP
#define EQUILAB_ABELIAN_HPP

#include <string>
#include <vector>

#include "equilab/intmat.hpp"

namespace equilab {

// Finitely generated abelian group ⊕ Z/d_i, with d_i = 0 encoding Z.
// d_i = 1 factors are legal and denote trivial summands.
struct FgAbGroup {
  std::vector<Int> factors;

  FgAbGroup() = default;
  explicit FgAbGroup(std::vector<Int> d);

  int rank() const { return static_cast<int>(factors.size()); }
  bool is_finite() const;
  Int size() const;  // DomainError when infinite
  bool is_trivial() const;
  bool operator==(const FgAbGroup& o) const { return factors == o.factors; }

  static FgAbGroup free(int rank) { return FgAbGroup(std::vector<Int>(rank, 0)); }
  static FgAbGroup cyclic(Int d) { return FgAbGroup({d}); }

  std::string describe() const;  // e.g. "Z^2 + Z/4"
};

// Homomorphism between FgAbGroups as an integer matrix, entries canonically
// reduced mod the target factors. Equality is plain matrix equality after
// reduction, which realizes entrywise congruence.
class AbHom {
 public:
  AbHom() = default;
  AbHom(FgAbGroup source, FgAbGroup target, IntMat matrix);  // checks well-definedness

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const IntMat& matrix() const { return mat_; }

  bool operator==(const AbHom& o) const {
    return source_ == o.source_ && target_ == o.target_ && mat_ == o.mat_;
  }

  static AbHom identity(const FgAbGroup& a);
  static AbHom zero(const FgAbGroup& source, const FgAbGroup& target);

  bool is_invertible() const;  // source == target rank-wise not required a priori

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMat mat_;
};

AbHom compose(const AbHom& g, const AbHom& f);  // g∘f, overflow-safe
AbHom add(const AbHom& a, const AbHom& b);

}  // namespace equilab

#endif
