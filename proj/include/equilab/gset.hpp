#ifndef EQUILAB_GSET_HPP
#define EQUILAB_GSET_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "equilab/category.hpp"
#include "equilab/common.hpp"
#include "equilab/perm.hpp"

namespace equilab {

class GSet;
using GSetPtr = std::shared_ptr<const GSet>;

// Finite set with an action of a Subgroup (the whole group being the improper
// subgroup). The homomorphism law is checked exhaustively on construction.
class GSet {
 public:
  // action[k] = permutation of {0..size-1} for the k-th subgroup element
  static GSetPtr make(Subgroup group, int size, std::vector<std::vector<int>> action);
  // action given on the parent group's generators, extended via the BFS
  // factorization and then validated (requires the acting group to be the
  // full group, since only its generators are known)
  static GSetPtr from_generator_action(const PermGroupPtr& g, int size,
                                       const std::vector<std::vector<int>>& gen_action);
  static GSetPtr from_json(const std::string& text);

  const Subgroup& group() const { return group_; }
  int size() const { return size_; }
  // act by the k-th element of the acting subgroup
  int act_local(int k, int point) const { return action_[k][point]; }
  // act by a parent-group element index (must lie in the acting subgroup)
  int act(int parent_elem, int point) const;

  bool operator==(const GSet& o) const {
    return group_ == o.group_ && size_ == o.size_ && action_ == o.action_;
  }

 private:
  GSet() = default;
  Subgroup group_;
  int size_ = 0;
  std::vector<std::vector<int>> action_;
  std::vector<int> local_of_parent_;  // parent element index -> local slot or -1
};

// Equivariant map of G-sets over the same acting group.
struct GMap {
  GSetPtr source;
  GSetPtr target;
  std::vector<int> images;

  GMap() = default;
  GMap(GSetPtr src, GSetPtr tgt, std::vector<int> images);  // checks equivariance
  int operator()(int x) const { return images[x]; }
};

GMap compose(const GMap& g, const GMap& f);  // g after f
GMap identity_map(const GSetPtr& x);

struct Orbit {
  std::vector<int> points;  // ascending
  int base_point;           // least point
  Subgroup stabilizer;      // stabilizer of base_point
  int class_index;          // subgroup class of the stabilizer (in the parent group)
};

struct OrbitDecomposition {
  std::vector<Orbit> orbits;
  std::vector<int> stabilizer_class_multiset() const;  // sorted
};

// left cosets big/small with left translation
GSetPtr coset_gset(const Subgroup& big, const Subgroup& small);
GSetPtr coset_gset(const PermGroupPtr& g, const Subgroup& h);

OrbitDecomposition orbits_decompose(const GSet& x);
std::vector<int> fixed_points(const GSet& x, const Subgroup& h);

struct Pullback {
  GSetPtr apex;
  GMap to_x;
  GMap to_y;
  std::vector<std::pair<int, int>> pairs;  // apex point -> (x, y)
};

// P = { (x,y) : f(x) = g(y) } with the diagonal action
Pullback pullback(const GMap& f, const GMap& g);
Pullback product(const GSetPtr& x, const GSetPtr& y);  // pullback over the point

GSetPtr restrict_gset(const GSetPtr& x, const Subgroup& h);
// K ×_H X for H <= K
GSetPtr induce(const Subgroup& k, const GSetPtr& x);
// Map_H(K, X) for H <= K; SizeError when |X|^[K:H] exceeds the guard
GSetPtr coinduce(const Subgroup& k, const GSetPtr& x, Int size_guard = 1 << 20);

GSetPtr disjoint_union(const GSetPtr& x, const GSetPtr& y);
GSetPtr trivial_gset(const Subgroup& group, int size);

bool are_isomorphic(const GSet& x, const GSet& y);

// number of equivariant maps X -> Y (product over orbits of |Y^{stab}|)
Int count_equivariant_maps(const GSet& x, const GSet& y);
// brute-force enumeration; test oracle for tiny sets
Int count_equivariant_maps_brute(const GSet& x, const GSet& y);

// maps G/H -> G/K correspond to cosets gK with g^{-1}Hg <= K
std::vector<GMap> coset_maps(const GSetPtr& gh, const GSetPtr& gk, const Subgroup& h,
                             const Subgroup& k);

// O_G (or the full subcategory on `object_classes`) together with the
// G-set/GMap realization of each object and morphism
struct OrbitCategoryData {
  FiniteCategory category;
  std::vector<int> object_class;        // object -> subgroup class
  std::vector<GSetPtr> object_gset;     // object -> G/H realization
  std::vector<GMap> morphism_map;       // morphism -> equivariant map
};

OrbitCategoryData orbit_category_data(const PermGroupPtr& g, std::vector<int> object_classes = {});

}  // namespace equilab

#endif
