#include "equilab/burnside.hpp"

#include <algorithm>
#include <map>

namespace equilab {

Span::Span(GMap l, GMap r) : left(std::move(l)), right(std::move(r)) {
  if (!(*left.source == *right.source)) throw DomainError("span legs need a common apex");
}

Span identity_span(const GSetPtr& x) { return Span(identity_map(x), identity_map(x)); }

Span compose_spans(const Span& s2, const Span& s1) {
  if (!(*s1.y() == *s2.x())) throw DomainError("middle objects of the spans differ");
  Pullback pb = pullback(s1.right, s2.left);
  return Span(compose(s1.left, pb.to_x), compose(s2.right, pb.to_y));
}

namespace {

struct ApexOrbit {
  int base;
  Subgroup stab;
  int left_image;
  int right_image;
  std::vector<int> points;
};

std::vector<ApexOrbit> span_orbits(const Span& s) {
  std::vector<ApexOrbit> out;
  for (const auto& orb : orbits_decompose(*s.apex()).orbits)
    out.push_back({orb.base_point, orb.stabilizer, s.left.images[orb.base_point],
                   s.right.images[orb.base_point], orb.points});
  return out;
}

}  // namespace

bool spans_isomorphic(const Span& a, const Span& b, int max_apex) {
  if (!(*a.x() == *b.x()) || !(*a.y() == *b.y()))
    throw DomainError("span isomorphism requires equal outer objects");
  if (a.apex()->size() > max_apex || b.apex()->size() > max_apex)
    throw SizeError("span apex exceeds the isomorphism search bound");
  if (a.apex()->size() != b.apex()->size()) return false;

  const Subgroup& grp = a.apex()->group();
  const PermGroup& g = *grp.parent();

  std::vector<ApexOrbit> oa = span_orbits(a);
  std::vector<ApexOrbit> ob = span_orbits(b);
  if (oa.size() != ob.size()) return false;

  // assign each orbit of a to a distinct orbit of b; the image of the base
  // point determines the map on the whole orbit, and candidate images must
  // have the same stabilizer and matching leg values
  std::vector<bool> used(ob.size(), false);

  // candidates per a-orbit: (b-orbit, base image point)
  std::vector<std::vector<std::pair<int, int>>> cands(oa.size());
  for (std::size_t i = 0; i < oa.size(); ++i) {
    for (std::size_t j = 0; j < ob.size(); ++j) {
      if (ob[j].points.size() != oa[i].points.size()) continue;
      for (int y : ob[j].points) {
        // stabilizer of y must equal stabilizer of the a-base exactly
        bool stab_ok = true;
        for (int e : grp.element_indices()) {
          bool fa = oa[i].stab.contains_index(e);
          bool fb = (b.apex()->act(e, y) == y);
          if (fa != fb) {
            stab_ok = false;
            break;
          }
        }
        if (!stab_ok) continue;
        if (b.left.images[y] != a.left.images[oa[i].base]) continue;
        if (b.right.images[y] != a.right.images[oa[i].base]) continue;
        cands[i].emplace_back(static_cast<int>(j), y);
      }
    }
    if (cands[i].empty()) return false;
  }

  std::vector<int> pick(oa.size(), -1);
  auto backtrack = [&](auto&& self, std::size_t i) -> bool {
    if (i == oa.size()) return true;
    for (std::size_t c = 0; c < cands[i].size(); ++c) {
      auto [j, y] = cands[i][c];
      if (used[j]) continue;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  (void)g;
  return backtrack(backtrack, 0);
}

TableOfMarks table_of_marks(const PermGroupPtr& g) {
  const auto& table = g->subgroup_classes();
  const int c = static_cast<int>(table.size());
  TableOfMarks t;
  t.group = g;
  t.marks = IntMat::Zero(c, c);
  std::vector<GSetPtr> cosets;
  for (int k = 0; k < c; ++k) cosets.push_back(coset_gset(g, table.representatives[k]));
  for (int h = 0; h < c; ++h)
    for (int k = 0; k < c; ++k)
      t.marks(h, k) =
          static_cast<Int>(fixed_points(*cosets[k], table.representatives[h]).size());
  return t;
}

BurnsideElement burnside_basis_element(const PermGroupPtr& g, int cls) {
  const int c = static_cast<int>(g->subgroup_classes().size());
  if (cls < 0 || cls >= c) throw DomainError("class index out of range");
  BurnsideElement e{g, IntVec::Zero(c)};
  e.coeffs[cls] = 1;
  return e;
}

BurnsideElement burnside_unit(const PermGroupPtr& g) {
  return burnside_basis_element(g, static_cast<int>(g->subgroup_classes().size()) - 1);
}

BurnsideElement burnside_add(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.group.get() != b.group.get()) throw DomainError("Burnside elements over different groups");
  return {a.group, a.coeffs + b.coeffs};
}

namespace {

IntVec basis_product(const PermGroupPtr& g, int ch, int ck) {
  const auto& table = g->subgroup_classes();
  IntVec out = IntVec::Zero(static_cast<int>(table.size()));
  const Subgroup& h = table.representatives[ch];
  const Subgroup& k = table.representatives[ck];
  auto dec = g->double_cosets(h, k, g->full_subgroup());
  for (const auto& inter : dec.left_intersections) out[table.class_of(inter)] += 1;
  return out;
}

}  // namespace

BurnsideElement burnside_multiply(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.group.get() != b.group.get()) throw DomainError("Burnside elements over different groups");
  const int c = static_cast<int>(a.coeffs.size());
  IntVec out = IntVec::Zero(c);
  for (int i = 0; i < c; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (int j = 0; j < c; ++j) {
      if (b.coeffs[j] == 0) continue;
      out += a.coeffs[i] * b.coeffs[j] * basis_product(a.group, i, j);
    }
  }
  return {a.group, out};
}

BurnsideElement burnside_class(const GSet& x) {
  PermGroupPtr g = x.group().parent();
  if (!(x.group() == g->full_subgroup()))
    throw DomainError("Burnside class requires a full-group action");
  const int c = static_cast<int>(g->subgroup_classes().size());
  IntVec out = IntVec::Zero(c);
  for (const auto& orb : orbits_decompose(x).orbits) out[orb.class_index] += 1;
  return {g, out};
}

IntVec marks_vector(const BurnsideElement& a) {
  return table_of_marks(a.group).marks * a.coeffs;
}

LocalBurnside local_burnside(const Subgroup& ambient) {
  const PermGroup& g = *ambient.parent();
  LocalBurnside lb;
  lb.ambient = ambient;

  // A-conjugacy classes of subgroups of A, reps canonically least
  std::vector<int> members;
  for (std::size_t id = 0; id < g.all_subgroups().size(); ++id)
    if (ambient.contains(g.lattice_subgroup(static_cast<int>(id))))
      members.push_back(static_cast<int>(id));

  for (int id : members) {
    if (lb.local_class_of_id.count(id)) continue;
    int cls = static_cast<int>(lb.class_rep_ids.size());
    lb.class_rep_ids.push_back(id);
    for (int a : ambient.element_indices()) {
      int im = g.conj_subgroup_id(a, id);
      lb.local_class_of_id.emplace(im, cls);
    }
  }

  const int c = static_cast<int>(lb.class_rep_ids.size());
  lb.product_table.assign(c, IntMat::Zero(c, c));
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) {
      const Subgroup& hi = g.lattice_subgroup(lb.class_rep_ids[i]);
      const Subgroup& hj = g.lattice_subgroup(lb.class_rep_ids[j]);
      auto dec = g.double_cosets(hi, hj, ambient);
      for (const auto& inter : dec.left_intersections)
        lb.product_table[i](lb.local_class_of_id.at(g.lattice_id(inter)), j) += 1;
    }
  return lb;
}

IntVec local_multiply(const LocalBurnside& lb, const IntVec& a, const IntVec& b) {
  const int c = static_cast<int>(lb.class_rep_ids.size());
  IntVec out = IntVec::Zero(c);
  for (int i = 0; i < c; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < c; ++j) {
      if (b[j] == 0) continue;
      out += a[i] * b[j] * lb.product_table[i].col(j);
    }
  }
  return out;
}

}  // namespace equilab
