#ifndef EQUILAB_BURNSIDE_HPP
#define EQUILAB_BURNSIDE_HPP

#include "equilab/gset.hpp"
#include "equilab/intmat.hpp"
#include "equilab/perm.hpp"

namespace equilab {

// Span of G-sets X <- S -> Y; a morphism of the span category.
struct Span {
  GMap left;   // S -> X
  GMap right;  // S -> Y

  Span() = default;
  Span(GMap l, GMap r);
  const GSetPtr& apex() const { return left.source; }
  const GSetPtr& x() const { return left.target; }
  const GSetPtr& y() const { return right.target; }
};

Span identity_span(const GSetPtr& x);

// s2 after s1, apex by pullback of the middle legs
Span compose_spans(const Span& s2, const Span& s1);

// equivariant apex bijection commuting with both legs, by backtracking over
// orbit assignments; SizeError above max_apex points
bool spans_isomorphic(const Span& a, const Span& b, int max_apex = 24);

struct TableOfMarks {
  PermGroupPtr group;
  IntMat marks;  // marks(h, k) = |(G/K)^H|, classes sorted by (order, rep)
};

TableOfMarks table_of_marks(const PermGroupPtr& g);

struct BurnsideElement {
  PermGroupPtr group;
  IntVec coeffs;  // over subgroup class representatives
};

BurnsideElement burnside_basis_element(const PermGroupPtr& g, int cls);
BurnsideElement burnside_unit(const PermGroupPtr& g);  // [G/G]
BurnsideElement burnside_add(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement burnside_multiply(const BurnsideElement& a, const BurnsideElement& b);

// class of X in the Burnside ring (orbit decomposition)
BurnsideElement burnside_class(const GSet& x);

// evaluation of all marks: component h is sum_k coeffs[k] * |(G/K)^H|
IntVec marks_vector(const BurnsideElement& a);

// Burnside multiplication inside an ambient subgroup: positions refer to
// A-conjugacy classes of subgroups of A (used by the Green checks)
struct LocalBurnside {
  Subgroup ambient;
  std::vector<int> class_rep_ids;            // lattice ids, canonical order
  std::map<int, int> local_class_of_id;      // lattice id -> local class
  std::vector<IntMat> product_table;         // product_table[i] column j = [A/H_i]*[A/H_j]
};

LocalBurnside local_burnside(const Subgroup& ambient);
IntVec local_multiply(const LocalBurnside& lb, const IntVec& a, const IntVec& b);

}  // namespace equilab

#endif
