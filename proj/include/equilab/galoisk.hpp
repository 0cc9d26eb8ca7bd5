#ifndef EQUILAB_GALOISK_HPP
#define EQUILAB_GALOISK_HPP

#include <vector>

#include "equilab/mackey.hpp"
#include "equilab/perm.hpp"

namespace equilab {

// Equivariant K-theory of the extension F_{q^n} over F_q, with the cyclic
// Galois group realized as the n-cycle permutation group. The groups
// K_0 = Z and K_{2i-1}(F_{q^a}) = Z/(q^{ai}-1) are model input; the Mackey
// structure maps on them are what this module builds and verifies.
struct GaloisKModel {
  Int q = 0;
  int n = 0;
  int i_max = 0;
  PermGroupPtr group;               // cyclic of order n
  std::vector<int> divisors;        // of n, ascending
  std::vector<int> class_divisor;   // subgroup class -> subextension degree a
  MackeyFunctor k0;                 // weight 0
  std::vector<MackeyFunctor> k_odd; // index i-1 holds the K_{2i-1} functor
};

GaloisKModel build_model(Int q, int n, int i_max);

// full axiom suite on every weight plus the composition identities
// F∘V = sum of Frobenius powers and V∘F = index, at every subextension pair
CheckReport verify_model(const GaloisKModel& model);

struct FixedPointComparison {
  int sub_degree = 0;   // a
  int big_degree = 0;   // b, with a | b
  Int image_f_order = 0;
  Int fixed_order = 0;
  bool f_image_equals_fixed = false;
  Int image_v_order = 0;
  Int coinvariants_order = 0;
  bool v_image_equals_coinvariants = false;
};

// image of F against the Frobenius-fixed subgroup, and image of V against
// the coinvariants, for every subextension pair at weight i
std::vector<FixedPointComparison> compare_fixed_points(const GaloisKModel& model, int i);

struct DescentE2 {
  int weight = 0;
  FgAbGroup even;  // ker(phi - 1) / im(N)
  FgAbGroup odd;   // ker(N) / im(phi - 1)
};

DescentE2 descent_e2(const GaloisKModel& model, int i);

// q^(a*i) - 1 with overflow checking
Int k_odd_modulus(Int q, int a, int i);

}  // namespace equilab

#endif
