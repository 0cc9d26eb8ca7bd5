#ifndef EQUILAB_CATEGORY_HPP
#define EQUILAB_CATEGORY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equilab/common.hpp"
#include "equilab/perm.hpp"

namespace equilab {

// Finite category given by explicit composition tables. Identity and
// associativity laws are checked exhaustively on construction.
class FiniteCategory {
 public:
  FiniteCategory() = default;  // empty category

  struct Mor {
    int src;
    int dst;
    std::string name;
  };

  // comp maps (g_index, f_index) -> (g∘f)_index for composable pairs
  static FiniteCategory validate_category(std::vector<std::string> objects,
                                          std::vector<Mor> morphisms,
                                          std::vector<int> identities,
                                          const std::map<std::pair<int, int>, int>& comp);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(mors_.size()); }
  const std::string& object_name(int o) const { return objects_[o]; }
  const Mor& mor(int m) const { return mors_[m]; }
  int identity(int o) const { return identity_[o]; }
  const std::vector<int>& hom(int a, int b) const { return hom_[a][b]; }

  // g∘f with f applied first; DomainError when not composable
  int compose(int g, int f) const;

  static FiniteCategory from_json(const std::string& text);
  std::string to_json() const;

 private:
  std::vector<std::string> objects_;
  std::vector<Mor> mors_;
  std::vector<int> identity_;
  std::vector<std::vector<int>> comp_;  // comp_[g][f], -1 when not composable
  std::vector<std::vector<std::vector<int>>> hom_;
};

// Contravariant presheaf of finite sets with exhaustively checked functoriality.
class Presheaf {
 public:
  // restriction[m] carries P(dst m) -> P(src m) as a function table
  Presheaf(const FiniteCategory& base, std::vector<int> value_sizes,
           std::vector<std::vector<int>> restriction);

  const FiniteCategory& base() const { return *base_; }
  int value_size(int o) const { return value_sizes_[o]; }
  int restrict_along(int m, int element) const { return restriction_[m][element]; }

 private:
  const FiniteCategory* base_;
  std::vector<int> value_sizes_;
  std::vector<std::vector<int>> restriction_;
};

// P(d) = { (u: d->a, v: d->b) : f∘u = g∘v } for a cospan f: a->c <- b : g.
Presheaf pullback_presheaf(const FiniteCategory& t, int f, int g);

// When every connected component of the category of elements has a terminal
// object, returns the sorted object multiset of those terminals; else nullopt.
std::optional<std::vector<int>> decompose_into_representables(const Presheaf& p);

struct OrbitalReport {
  bool orbital = false;
  bool atomic = false;
  std::optional<std::pair<int, int>> failing_cospan;   // (f, g) with common target
  std::optional<std::pair<int, int>> failing_retract;  // (r, s) with r∘s = id
};

std::pair<bool, std::optional<std::pair<int, int>>> is_orbital(const FiniteCategory& t);
std::pair<bool, std::optional<std::pair<int, int>>> is_atomic(const FiniteCategory& t);
OrbitalReport orbital_report(const FiniteCategory& t);

// --- builders ---

// category of transitive G-sets G/H over subgroup class representatives;
// `object_classes` restricts to a subset of classes (all when empty)
FiniteCategory orbit_category(const PermGroupPtr& g, std::vector<int> object_classes = {});

// full subcategory O_{G,F}; validates the family closure condition
FiniteCategory family_subcategory(const PermGroupPtr& g, std::vector<int> family_classes);

// finite sets of cardinality <= n (optionally including the empty set) and surjections
FiniteCategory surj_leq(int n, bool include_empty = false);

// disjoint union of one-object automorphism categories
FiniteCategory groupoid_category(const std::vector<PermGroupPtr>& groups);

// two objects a, b with s∘r a nontrivial split idempotent on a (not atomic)
FiniteCategory split_idempotent_category();

// "kind:params" builtin spec, e.g. "surj_leq:3", "orbit_category:S3",
// "family:S3:1,3", "groupoid:C2,C3"
FiniteCategory build_builtin(const std::string& spec);

}  // namespace equilab

#endif
