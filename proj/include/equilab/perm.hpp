#ifndef EQUILAB_PERM_HPP
#define EQUILAB_PERM_HPP

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "equilab/common.hpp"

namespace equilab {

constexpr int kMaxDegree = 32;
constexpr std::size_t kDefaultOrderBound = 2000;

class Permutation {
 public:
  explicit Permutation(int degree);  // identity
  explicit Permutation(std::vector<int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }
  bool is_identity() const;

  Permutation inverse() const;
  // function composition: (a*b)(x) = a(b(x)), b applied first
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

class PermGroup;
using PermGroupPtr = std::shared_ptr<const PermGroup>;

// Subgroup of a fully enumerated PermGroup, stored as sorted positions into
// the parent's canonical element list.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(PermGroupPtr parent, std::vector<int> element_indices);  // validates closure

  const PermGroupPtr& parent() const { return parent_; }
  const std::vector<int>& element_indices() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  bool contains_index(int e) const;
  bool contains(const Subgroup& other) const;
  const Permutation& element(int k) const;  // k-th element in canonical order
  bool is_cyclic() const;

  bool operator==(const Subgroup& o) const {
    return parent_.get() == o.parent_.get() && elems_ == o.elems_;
  }
  bool operator<(const Subgroup& o) const;  // (order, elems) canonical order

 private:
  PermGroupPtr parent_;
  std::vector<int> elems_;
};

struct SubgroupClassTable {
  std::vector<Subgroup> representatives;  // sorted by (order, element list)
  // one entry per enumerated subgroup: element-index set -> (class, conjugator t)
  // where t * H * t^{-1} = representative
  std::map<std::vector<int>, std::pair<int, int>> conjugator_index;

  std::size_t size() const { return representatives.size(); }
  // (class index, conjugator element index); throws DomainError for foreign sets
  std::pair<int, int> locate(const Subgroup& h) const;
  int class_of(const Subgroup& h) const { return locate(h).first; }
};

struct DoubleCosetDecomposition {
  Subgroup left;     // L
  Subgroup right;    // K
  Subgroup ambient;  // H
  std::vector<int> reps;  // least element of each double coset, ascending
  std::vector<Subgroup> left_intersections;   // L ∩ xKx^{-1}
  std::vector<Subgroup> right_intersections;  // (x^{-1}Lx) ∩ K
};

// Fully enumerated finite permutation group. Immutable after construction;
// the subgroup lattice and multiplication table are built lazily.
class PermGroup : public std::enable_shared_from_this<PermGroup> {
 public:
  static PermGroupPtr close_group(int degree, std::vector<Permutation> generators,
                                  std::size_t order_bound = kDefaultOrderBound);
  // Builtins: "S3", "S4", "A4", "Q8", "C2xC2", "C<n>", "D<n>" (n >= 3).
  static PermGroupPtr builtin(const std::string& name);
  static PermGroupPtr from_json(const std::string& text);
  // Accepts either a builtin name or inline JSON ({"degree":..,"generators":..}).
  static PermGroupPtr parse_spec(const std::string& spec);

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  int index_of(const Permutation& p) const;  // -1 when absent
  int mul(int a, int b) const;               // composition, b applied first
  int inv(int a) const;
  int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }  // g h g^{-1}
  int identity_index() const { return identity_; }
  int element_order(int a) const;
  // BFS factorization: element e != id satisfies e = gen[g] * prev
  std::pair<int, int> factor_step(int e) const { return bfs_parent_[e]; }

  Subgroup full_subgroup() const;
  Subgroup trivial_subgroup() const;
  Subgroup subgroup_from_indices(std::vector<int> elems) const;
  Subgroup subgroup_generated(const std::vector<int>& gens) const;

  // --- subgroup lattice (computed on first use) ---
  const std::vector<Subgroup>& all_subgroups() const;
  const SubgroupClassTable& subgroup_classes() const;
  int lattice_id(const Subgroup& h) const;  // position in all_subgroups()
  const Subgroup& lattice_subgroup(int id) const;
  int conj_subgroup_id(int g, int id) const;
  int intersect_id(int a, int b) const;
  int class_of_id(int id) const;
  int conjugator_of_id(int id) const;  // t with t H t^{-1} = representative
  int class_rep_id(int cls) const;

  Subgroup normalizer(const Subgroup& h) const;
  // transversal of H in N(H): least element per coset, ascending
  std::vector<int> weyl_transversal(const Subgroup& h) const;
  std::pair<Subgroup, std::vector<int>> normalizer_and_weyl(const Subgroup& h) const;

  // left-coset transversal of `small` in `big`: least element per coset
  static std::vector<int> coset_transversal(const Subgroup& big, const Subgroup& small);

  std::optional<Permutation> is_conjugate(const Subgroup& h1, const Subgroup& h2) const;
  DoubleCosetDecomposition double_cosets(const Subgroup& left, const Subgroup& right,
                                         const Subgroup& ambient) const;

  std::string to_json() const;

 private:
  PermGroup() = default;
  struct Lattice;
  const Lattice& lattice() const;

  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;  // sorted
  int identity_ = 0;
  std::vector<std::pair<int, int>> bfs_parent_;

  mutable std::once_flag mult_once_;
  mutable std::vector<int> mult_;  // order x order
  mutable std::vector<int> inv_;

  mutable std::once_flag lattice_once_;
  mutable std::unique_ptr<Lattice> lattice_;
};

struct PermGroup::Lattice {
  std::vector<Subgroup> subgroups;  // canonical (order, elems) order
  std::map<std::vector<int>, int> id_by_elems;
  SubgroupClassTable classes;
  std::vector<int> class_of;    // by lattice id
  std::vector<int> conjugator;  // by lattice id
  std::vector<int> rep_id;      // by class
};

}  // namespace equilab

#endif
