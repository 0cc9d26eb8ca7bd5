#ifndef EQUILAB_MACKEY_HPP
#define EQUILAB_MACKEY_HPP

#include <map>
#include <string>
#include <vector>

#include "equilab/abelian.hpp"
#include "equilab/burnside.hpp"
#include "equilab/perm.hpp"

namespace equilab {

struct CheckEntry {
  std::string check;
  std::string context;
  bool pass = true;
  std::string detail;  // witness data on failure
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  bool ok() const;
  int failures() const;
  std::string summary() const;
};

// Printed with checker output: the double-coset identities are verified over
// representatives of L\H/K inside the ambient subgroup H.
extern const char* const kDoubleCosetIndexNote;

// Mackey functor on a finite group, stored on subgroup-class representatives:
// one abelian group per class, restriction/transfer to every subgroup of each
// representative (conjugation-transported to class level), and the action of
// each Weyl transversal element. eval_* reconstruct the maps for arbitrary
// concrete subgroup pairs.
class MackeyFunctor {
 public:
  MackeyFunctor() = default;

  const PermGroupPtr& group() const { return group_; }
  int num_classes() const { return static_cast<int>(levels_.size()); }
  const FgAbGroup& level(int cls) const { return levels_[cls]; }

  // transversal of N(rep)/rep; position 0 is the identity
  const std::vector<int>& weyl_elements(int cls) const { return weyl_elems_[cls]; }
  const AbHom& weyl_hom(int cls, int pos) const { return weyl_act_[cls][pos]; }
  // action of an arbitrary normalizer element of the class representative
  const AbHom& weyl_action(int cls, int normalizer_elem) const;

  bool has_stored(int cls, int sub_id) const;
  const AbHom& stored_res(int cls, int sub_id) const;
  const AbHom& stored_tr(int cls, int sub_id) const;
  // mutable access for tamper-style experiments
  void set_stored_tr(int cls, int sub_id, AbHom h);
  void set_stored_res(int cls, int sub_id, AbHom h);
  const std::map<int, AbHom>& stored_res_all(int cls) const { return res_[cls]; }

  AbHom eval_res(const Subgroup& h, const Subgroup& k) const;  // M(K) -> M(H), H <= K
  AbHom eval_tr(const Subgroup& h, const Subgroup& k) const;   // M(H) -> M(K)
  AbHom eval_conj(int g_elem, const Subgroup& h) const;        // M(H) -> M(gHg^{-1})

  std::string to_json() const;
  static MackeyFunctor from_json(const std::string& text);

  // assembled by the constructors below
  static MackeyFunctor from_parts(PermGroupPtr group, std::vector<FgAbGroup> levels,
                                  std::vector<std::vector<AbHom>> weyl_actions,
                                  std::vector<std::map<int, AbHom>> res,
                                  std::vector<std::map<int, AbHom>> tr);

 private:
  void validate_structure() const;

  PermGroupPtr group_;
  std::vector<FgAbGroup> levels_;
  std::vector<std::vector<int>> weyl_elems_;
  std::vector<std::vector<AbHom>> weyl_act_;
  std::vector<std::map<int, AbHom>> res_;  // per class: lattice id of U <= rep -> hom
  std::vector<std::map<int, AbHom>> tr_;
};

// Exhaustive axiom check: transitivity along all chains, Weyl functoriality
// and invertibility, conjugation compatibility, and the double-coset formula
// for all triples L, K <= H over class representatives.
CheckReport check_mackey(const MackeyFunctor& m);

// Burnside Mackey functor: level(H) = free abelian group on H-classes of
// subgroups of H; res by double-coset decomposition, tr by induction.
MackeyFunctor burnside_mackey(const PermGroupPtr& g);

// Fixed-point Mackey functor of an integral representation given on the
// generators; level(H) is the H-fixed sublattice.
MackeyFunctor fixed_point_mackey(const PermGroupPtr& g, const std::vector<IntMat>& generator_action);

// Frobenius reciprocity tr(x * res(y)) = tr(x) * y over the local Burnside
// ring structure; m must be burnside_mackey-shaped.
CheckReport green_check(const MackeyFunctor& m);

}  // namespace equilab

#endif
