#include "equilab/mackey.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace equilab {

using nlohmann::json;

const char* const kDoubleCosetIndexNote =
    "double-coset identities are checked over representatives of L\\H/K inside "
    "the ambient subgroup H";

bool CheckReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

int CheckReport::failures() const {
  return static_cast<int>(
      std::count_if(entries.begin(), entries.end(), [](const CheckEntry& e) { return !e.pass; }));
}

std::string CheckReport::summary() const {
  std::ostringstream os;
  os << entries.size() << " checks, " << failures() << " failed";
  return os.str();
}

namespace {

std::string matrix_string(const IntMat& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows(); ++i) {
    os << "[";
    for (int j = 0; j < m.cols(); ++j) os << m(i, j) << (j + 1 < m.cols() ? "," : "");
    os << "]" << (i + 1 < m.rows() ? "," : "");
  }
  os << "]";
  return os.str();
}

std::string hom_mismatch(const AbHom& lhs, const AbHom& rhs) {
  return "lhs=" + matrix_string(lhs.matrix()) + " rhs=" + matrix_string(rhs.matrix());
}

}  // namespace

// ---------------------------------------------------------------------------
// MackeyFunctor

MackeyFunctor MackeyFunctor::from_parts(PermGroupPtr group, std::vector<FgAbGroup> levels,
                                        std::vector<std::vector<AbHom>> weyl_actions,
                                        std::vector<std::map<int, AbHom>> res,
                                        std::vector<std::map<int, AbHom>> tr) {
  MackeyFunctor m;
  m.group_ = std::move(group);
  m.levels_ = std::move(levels);
  m.weyl_act_ = std::move(weyl_actions);
  m.res_ = std::move(res);
  m.tr_ = std::move(tr);

  const auto& table = m.group_->subgroup_classes();
  m.weyl_elems_.resize(table.size());
  for (std::size_t c = 0; c < table.size(); ++c)
    m.weyl_elems_[c] = m.group_->weyl_transversal(table.representatives[c]);

  m.validate_structure();
  return m;
}

void MackeyFunctor::validate_structure() const {
  const auto& table = group_->subgroup_classes();
  const int nc = static_cast<int>(table.size());
  if (static_cast<int>(levels_.size()) != nc || static_cast<int>(weyl_act_.size()) != nc ||
      static_cast<int>(res_.size()) != nc || static_cast<int>(tr_.size()) != nc)
    throw ValidationError("Mackey functor must cover every subgroup class");

  for (int c = 0; c < nc; ++c) {
    if (weyl_act_[c].size() != weyl_elems_[c].size())
      throw ValidationError("one Weyl action per transversal element required");
    for (std::size_t w = 0; w < weyl_act_[c].size(); ++w) {
      const AbHom& a = weyl_act_[c][w];
      if (!(a.source() == levels_[c]) || !(a.target() == levels_[c]))
        throw ValidationError("Weyl action endpoints must be the level");
      if (!a.is_invertible())
        throw ValidationError("Weyl action is not invertible at class " + std::to_string(c));
    }
    if (!(weyl_act_[c][0] == AbHom::identity(levels_[c])))
      throw ValidationError("identity coset must act as the identity");

    int rep_id = group_->class_rep_id(c);
    const Subgroup& rep = group_->lattice_subgroup(rep_id);
    for (std::size_t id = 0; id < group_->all_subgroups().size(); ++id) {
      const Subgroup& u = group_->lattice_subgroup(static_cast<int>(id));
      if (!rep.contains(u)) continue;
      int cu = group_->class_of_id(static_cast<int>(id));
      auto rit = res_[c].find(static_cast<int>(id));
      auto tit = tr_[c].find(static_cast<int>(id));
      if (rit == res_[c].end() || tit == tr_[c].end())
        throw ValidationError("missing res/tr for a subgroup of class representative " +
                              std::to_string(c));
      if (!(rit->second.source() == levels_[c]) || !(rit->second.target() == levels_[cu]))
        throw ValidationError("res endpoints mismatch at class " + std::to_string(c));
      if (!(tit->second.source() == levels_[cu]) || !(tit->second.target() == levels_[c]))
        throw ValidationError("tr endpoints mismatch at class " + std::to_string(c));
    }
  }
}

const AbHom& MackeyFunctor::weyl_action(int cls, int n) const {
  const PermGroup& g = *group_;
  int rep_id = g.class_rep_id(cls);
  const Subgroup& rep = g.lattice_subgroup(rep_id);
  for (std::size_t w = 0; w < weyl_elems_[cls].size(); ++w)
    if (rep.contains_index(g.mul(g.inv(weyl_elems_[cls][w]), n)))
      return weyl_act_[cls][w];
  throw DomainError("element does not normalize the class representative");
}

bool MackeyFunctor::has_stored(int cls, int sub_id) const { return res_[cls].count(sub_id) > 0; }
const AbHom& MackeyFunctor::stored_res(int cls, int sub_id) const { return res_[cls].at(sub_id); }
const AbHom& MackeyFunctor::stored_tr(int cls, int sub_id) const { return tr_[cls].at(sub_id); }
void MackeyFunctor::set_stored_tr(int cls, int sub_id, AbHom h) { tr_[cls].at(sub_id) = std::move(h); }
void MackeyFunctor::set_stored_res(int cls, int sub_id, AbHom h) { res_[cls].at(sub_id) = std::move(h); }

AbHom MackeyFunctor::eval_res(const Subgroup& h, const Subgroup& k) const {
  if (!k.contains(h)) throw DomainError("eval_res requires H <= K");
  const PermGroup& g = *group_;
  int h_id = g.lattice_id(h);
  int k_id = g.lattice_id(k);
  int ck = g.class_of_id(k_id);
  int ch = g.class_of_id(h_id);
  int tk = g.conjugator_of_id(k_id);
  int th = g.conjugator_of_id(h_id);
  int hpp = g.conj_subgroup_id(tk, h_id);
  int thpp = g.conjugator_of_id(hpp);
  // c_{t_H} c_{t_K}^{-1} c_{t_H''}^{-1} normalizes the representative of [H]
  int n = g.mul(th, g.mul(g.inv(tk), g.inv(thpp)));
  return compose(weyl_action(ch, n), res_[ck].at(hpp));
}

AbHom MackeyFunctor::eval_tr(const Subgroup& h, const Subgroup& k) const {
  if (!k.contains(h)) throw DomainError("eval_tr requires H <= K");
  const PermGroup& g = *group_;
  int h_id = g.lattice_id(h);
  int k_id = g.lattice_id(k);
  int ck = g.class_of_id(k_id);
  int ch = g.class_of_id(h_id);
  int tk = g.conjugator_of_id(k_id);
  int th = g.conjugator_of_id(h_id);
  int hpp = g.conj_subgroup_id(tk, h_id);
  int thpp = g.conjugator_of_id(hpp);
  int n = g.mul(thpp, g.mul(tk, g.inv(th)));
  return compose(tr_[ck].at(hpp), weyl_action(ch, n));
}

AbHom MackeyFunctor::eval_conj(int g_elem, const Subgroup& h) const {
  const PermGroup& g = *group_;
  int h_id = g.lattice_id(h);
  int ch = g.class_of_id(h_id);
  int hp = g.conj_subgroup_id(g_elem, h_id);
  int n = g.mul(g.conjugator_of_id(hp), g.mul(g_elem, g.inv(g.conjugator_of_id(h_id))));
  return weyl_action(ch, n);
}

// ---------------------------------------------------------------------------
// Axiom checker

CheckReport check_mackey(const MackeyFunctor& m) {
  CheckReport rep;
  const PermGroup& g = *m.group();
  const auto& table = g.subgroup_classes();
  const int nc = m.num_classes();

  auto label = [&](int id) {
    return "U" + std::to_string(id) + "(o" +
           std::to_string(g.lattice_subgroup(id).order()) + ")";
  };

  auto push = [&](const std::string& check, const std::string& ctx, bool pass,
                  const std::string& detail) {
    rep.entries.push_back({check, ctx, pass, pass ? "" : detail});
  };

  for (int c = 0; c < nc; ++c) {
    int rep_id = g.class_rep_id(c);
    const Subgroup& r = g.lattice_subgroup(rep_id);
    std::string rc = "H" + std::to_string(c);

    // self maps are identities
    push("res-self", rc, m.stored_res(c, rep_id) == AbHom::identity(m.level(c)),
         matrix_string(m.stored_res(c, rep_id).matrix()));
    push("tr-self", rc, m.stored_tr(c, rep_id) == AbHom::identity(m.level(c)),
         matrix_string(m.stored_tr(c, rep_id).matrix()));

    // Weyl action is functorial on the transversal
    const auto& wt = m.weyl_elements(c);
    for (std::size_t w1 = 0; w1 < wt.size(); ++w1)
      for (std::size_t w2 = 0; w2 < wt.size(); ++w2) {
        AbHom lhs = compose(m.weyl_hom(c, static_cast<int>(w1)), m.weyl_hom(c, static_cast<int>(w2)));
        const AbHom& rhs = m.weyl_action(c, g.mul(wt[w1], wt[w2]));
        push("weyl-functorial", rc + ": w" + std::to_string(w1) + "*w" + std::to_string(w2),
             lhs == rhs, hom_mismatch(lhs, rhs));
      }

    // inner conjugation is trivial
    for (int e : r.element_indices()) {
      AbHom c_inner = m.eval_conj(e, r);
      push("conj-inner", rc + ": g" + std::to_string(e),
           c_inner == AbHom::identity(m.level(c)), matrix_string(c_inner.matrix()));
    }

    std::vector<int> subs;
    for (std::size_t id = 0; id < g.all_subgroups().size(); ++id)
      if (r.contains(g.lattice_subgroup(static_cast<int>(id)))) subs.push_back(static_cast<int>(id));

    // transitivity along every chain U <= W <= R
    for (int u : subs)
      for (int w : subs) {
        const Subgroup& su = g.lattice_subgroup(u);
        const Subgroup& sw = g.lattice_subgroup(w);
        if (!sw.contains(su)) continue;
        AbHom lhs_res = compose(m.eval_res(su, sw), m.stored_res(c, w));
        push("res-transitive", rc + ": " + label(u) + "<=" + label(w),
             lhs_res == m.stored_res(c, u), hom_mismatch(lhs_res, m.stored_res(c, u)));
        AbHom lhs_tr = compose(m.stored_tr(c, w), m.eval_tr(su, sw));
        push("tr-transitive", rc + ": " + label(u) + "<=" + label(w),
             lhs_tr == m.stored_tr(c, u), hom_mismatch(lhs_tr, m.stored_tr(c, u)));
      }

    // conjugation compatibility with res and tr
    for (int u : subs)
      for (std::size_t w = 1; w < wt.size(); ++w) {
        const Subgroup& su = g.lattice_subgroup(u);
        int up = g.conj_subgroup_id(wt[w], u);
        AbHom cw = m.eval_conj(wt[w], su);
        AbHom lhs = compose(m.stored_res(c, up), m.weyl_hom(c, static_cast<int>(w)));
        AbHom rhs = compose(cw, m.stored_res(c, u));
        push("conj-res", rc + ": " + label(u) + ", w" + std::to_string(w), lhs == rhs,
             hom_mismatch(lhs, rhs));
        AbHom lhs_t = compose(m.weyl_hom(c, static_cast<int>(w)), m.stored_tr(c, u));
        AbHom rhs_t = compose(m.stored_tr(c, up), cw);
        push("conj-tr", rc + ": " + label(u) + ", w" + std::to_string(w), lhs_t == rhs_t,
             hom_mismatch(lhs_t, rhs_t));
      }

    // double-coset formula for all pairs L, K <= R
    for (int l : subs)
      for (int k : subs) {
        const Subgroup& sl = g.lattice_subgroup(l);
        const Subgroup& sk = g.lattice_subgroup(k);
        AbHom lhs = compose(m.eval_res(sl, r), m.eval_tr(sk, r));
        AbHom rhs = AbHom::zero(m.level(g.class_of_id(k)), m.level(g.class_of_id(l)));
        auto dec = g.double_cosets(sl, sk, r);
        for (std::size_t x = 0; x < dec.reps.size(); ++x) {
          const Subgroup& left_int = dec.left_intersections[x];   // L ∩ xKx^{-1}
          const Subgroup& right_int = dec.right_intersections[x]; // (x^{-1}Lx) ∩ K
          AbHom term = compose(
              m.eval_tr(left_int, sl),
              compose(m.eval_conj(dec.reps[x], right_int), m.eval_res(right_int, sk)));
          rhs = add(rhs, term);
        }
        push("double-coset", "H=" + rc + ", L=" + label(l) + ", K=" + label(k), lhs == rhs,
             hom_mismatch(lhs, rhs));
      }
  }
  (void)table;
  return rep;
}

// ---------------------------------------------------------------------------
// Burnside Mackey functor

MackeyFunctor burnside_mackey(const PermGroupPtr& g) {
  const auto& table = g->subgroup_classes();
  const int nc = static_cast<int>(table.size());

  std::vector<LocalBurnside> lb;
  lb.reserve(nc);
  for (int c = 0; c < nc; ++c) lb.push_back(local_burnside(table.representatives[c]));

  std::vector<FgAbGroup> levels;
  levels.reserve(nc);
  for (int c = 0; c < nc; ++c)
    levels.push_back(FgAbGroup::free(static_cast<int>(lb[c].class_rep_ids.size())));

  std::vector<std::vector<AbHom>> weyl(nc);
  std::vector<std::map<int, AbHom>> res(nc), tr(nc);

  for (int c = 0; c < nc; ++c) {
    const Subgroup& r = table.representatives[c];
    const int dim = levels[c].rank();

    for (int w : g->weyl_transversal(r)) {
      IntMat mat = IntMat::Zero(dim, dim);
      for (int col = 0; col < dim; ++col) {
        int image = g->conj_subgroup_id(w, lb[c].class_rep_ids[col]);
        mat(lb[c].local_class_of_id.at(image), col) = 1;
      }
      weyl[c].emplace_back(levels[c], levels[c], std::move(mat));
    }

    for (std::size_t id = 0; id < g->all_subgroups().size(); ++id) {
      const Subgroup& u = g->lattice_subgroup(static_cast<int>(id));
      if (!r.contains(u)) continue;
      int cu = g->class_of_id(static_cast<int>(id));
      int tu = g->conjugator_of_id(static_cast<int>(id));
      const int dim_u = levels[cu].rank();

      // res: [R/W] restricted to U, transported to the representative of [U]
      IntMat rm = IntMat::Zero(dim_u, dim);
      for (int col = 0; col < dim; ++col) {
        const Subgroup& w = g->lattice_subgroup(lb[c].class_rep_ids[col]);
        auto dec = g->double_cosets(u, w, r);
        for (const auto& inter : dec.left_intersections) {
          int moved = g->conj_subgroup_id(tu, g->lattice_id(inter));
          rm(lb[cu].local_class_of_id.at(moved), col) += 1;
        }
      }
      res[c].emplace(static_cast<int>(id), AbHom(levels[c], levels[cu], std::move(rm)));

      // tr: [rep_cu/W'] pulled back to U, induced up to R
      IntMat tm = IntMat::Zero(dim, dim_u);
      for (int col = 0; col < dim_u; ++col) {
        int wpp = g->conj_subgroup_id(g->inv(tu), lb[cu].class_rep_ids[col]);
        tm(lb[c].local_class_of_id.at(wpp), col) = 1;
      }
      tr[c].emplace(static_cast<int>(id), AbHom(levels[cu], levels[c], std::move(tm)));
    }
  }
  return MackeyFunctor::from_parts(g, std::move(levels), std::move(weyl), std::move(res),
                                   std::move(tr));
}

// ---------------------------------------------------------------------------
// Fixed-point Mackey functor

MackeyFunctor fixed_point_mackey(const PermGroupPtr& g,
                                 const std::vector<IntMat>& generator_action) {
  if (generator_action.size() != g->generators().size())
    throw ValidationError("one matrix per generator required");
  int dim = 0;
  if (!generator_action.empty()) dim = static_cast<int>(generator_action[0].rows());
  for (const auto& mat : generator_action)
    if (mat.rows() != dim || mat.cols() != dim)
      throw ValidationError("generator matrices must be square of equal size");

  // extend to the whole group along the BFS factorization
  const int n = static_cast<int>(g->order());
  std::vector<IntMat> rho(n);
  std::vector<bool> done(n, false);
  rho[g->identity_index()] = IntMat::Identity(dim, dim);
  done[g->identity_index()] = true;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int e = 0; e < n; ++e) {
      if (done[e]) continue;
      auto [prev, gen] = g->factor_step(e);
      if (prev < 0 || !done[prev]) continue;
      rho[e] = generator_action[gen] * rho[prev];
      done[e] = true;
      progress = true;
    }
  }
  for (bool d : done)
    if (!d) throw ValidationError("generator matrices could not be extended to the group");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rho[g->mul(a, b)] != rho[a] * rho[b])
        throw ValidationError("generator matrices do not define a group action");

  const auto& table = g->subgroup_classes();
  const int nc = static_cast<int>(table.size());

  // fixed sublattice basis per class representative
  std::vector<IntMat> basis(nc);
  std::vector<FgAbGroup> levels(nc);
  for (int c = 0; c < nc; ++c) {
    const Subgroup& r = table.representatives[c];
    IntMat stacked(dim * static_cast<int>(r.order()), dim);
    for (std::size_t k = 0; k < r.order(); ++k)
      stacked.block(static_cast<int>(k) * dim, 0, dim, dim) =
          rho[r.element_indices()[k]] - IntMat::Identity(dim, dim);
    basis[c] = integer_kernel(stacked);
    levels[c] = FgAbGroup::free(static_cast<int>(basis[c].cols()));
  }

  std::vector<std::vector<AbHom>> weyl(nc);
  std::vector<std::map<int, AbHom>> res(nc), tr(nc);
  for (int c = 0; c < nc; ++c) {
    const Subgroup& r = table.representatives[c];
    for (int w : g->weyl_transversal(r))
      weyl[c].emplace_back(levels[c], levels[c], solve_exact(basis[c], rho[w] * basis[c]));

    for (std::size_t id = 0; id < g->all_subgroups().size(); ++id) {
      const Subgroup& u = g->lattice_subgroup(static_cast<int>(id));
      if (!r.contains(u)) continue;
      int cu = g->class_of_id(static_cast<int>(id));
      int tu = g->conjugator_of_id(static_cast<int>(id));

      // res: include R-fixed vectors into U-fixed vectors, then transport
      res[c].emplace(static_cast<int>(id),
                     AbHom(levels[c], levels[cu],
                           solve_exact(basis[cu], rho[tu] * basis[c])));

      // tr: transport back, then sum over a transversal of R/U
      IntMat transfer = IntMat::Zero(dim, dim);
      for (int rep_elem : PermGroup::coset_transversal(r, u)) transfer += rho[rep_elem];
      tr[c].emplace(static_cast<int>(id),
                    AbHom(levels[cu], levels[c],
                          solve_exact(basis[c], transfer * rho[g->inv(tu)] * basis[cu])));
    }
  }
  return MackeyFunctor::from_parts(g, std::move(levels), std::move(weyl), std::move(res),
                                   std::move(tr));
}

// ---------------------------------------------------------------------------
// Green structure

CheckReport green_check(const MackeyFunctor& m) {
  CheckReport rep;
  const PermGroup& g = *m.group();
  const auto& table = g.subgroup_classes();

  std::vector<LocalBurnside> lb;
  for (std::size_t c = 0; c < table.size(); ++c) {
    lb.push_back(local_burnside(table.representatives[c]));
    if (static_cast<int>(lb[c].class_rep_ids.size()) != m.level(static_cast<int>(c)).rank())
      throw DomainError("green_check expects the Burnside Mackey functor shape");
  }

  for (int c = 0; c < m.num_classes(); ++c) {
    const Subgroup& r = table.representatives[c];
    int rep_id = g.class_rep_id(c);
    for (std::size_t id = 0; id < g.all_subgroups().size(); ++id) {
      const Subgroup& u = g.lattice_subgroup(static_cast<int>(id));
      if (!r.contains(u)) continue;
      int cu = g.class_of_id(static_cast<int>(id));
      const AbHom& res_u = m.stored_res(c, static_cast<int>(id));
      const AbHom& tr_u = m.stored_tr(c, static_cast<int>(id));

      const int du = m.level(cu).rank();
      const int dr = m.level(c).rank();
      for (int x = 0; x < du; ++x)
        for (int y = 0; y < dr; ++y) {
          IntVec bx = IntVec::Zero(du);
          bx[x] = 1;
          IntVec by = IntVec::Zero(dr);
          by[y] = 1;
          // tr(x * res(y)) = tr(x) * y
          IntVec res_y = res_u.matrix() * by;
          IntVec lhs = tr_u.matrix() * local_multiply(lb[cu], bx, res_y);
          IntVec rhs = local_multiply(lb[c], tr_u.matrix() * bx, by);
          bool pass = (lhs == rhs);
          std::ostringstream ctx;
          ctx << "H" << c << ": U" << id << " x=" << x << " y=" << y;
          rep.entries.push_back({"frobenius", ctx.str(), pass,
                                 pass ? ""
                                      : matrix_string(lhs) + " vs " + matrix_string(rhs)});
        }
    }
    (void)rep_id;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

std::string MackeyFunctor::to_json() const {
  const PermGroup& g = *group_;
  json j;
  j["schema"] = 1;
  j["group"] = json::parse(g.to_json());
  json levels = json::array();
  for (int c = 0; c < num_classes(); ++c)
    levels.push_back({{"class", c}, {"factors", levels_[c].factors}});
  j["levels"] = std::move(levels);

  json maps = json::array();
  auto matrix_json = [](const IntMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int jj = 0; jj < m.cols(); ++jj) row.push_back(m(i, jj));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  auto witness_json = [&](int id) {
    json w = json::array();
    for (int e : g.lattice_subgroup(id).element_indices())
      w.push_back(g.elements()[e].images());
    return w;
  };
  auto canonical_witness = [&](int cls, int target_cls) {
    const Subgroup& r = g.subgroup_classes().representatives[cls];
    for (std::size_t id = 0; id < g.all_subgroups().size(); ++id)
      if (g.class_of_id(static_cast<int>(id)) == target_cls &&
          r.contains(g.lattice_subgroup(static_cast<int>(id))))
        return static_cast<int>(id);
    return -1;
  };

  for (int c = 0; c < num_classes(); ++c) {
    for (std::size_t w = 1; w < weyl_act_[c].size(); ++w)
      maps.push_back({{"kind", "weyl"},
                      {"from", c},
                      {"to", c},
                      {"matrix", matrix_json(weyl_act_[c][w].matrix())}});
    int rep_id = g.class_rep_id(c);
    for (const auto& [id, hom] : res_[c]) {
      if (id == rep_id) continue;
      // skip entries reconstructible by conjugation inside the representative
      int cu = g.class_of_id(id);
      bool canonical = true;
      const Subgroup& r = g.subgroup_classes().representatives[c];
      for (int a : r.element_indices()) {
        int other = g.conj_subgroup_id(a, id);
        if (other < id && r.contains(g.lattice_subgroup(other))) canonical = false;
      }
      if (!canonical) continue;
      json entry = {{"kind", "res"}, {"from", c}, {"to", cu},
                    {"matrix", matrix_json(hom.matrix())}};
      json tentry = {{"kind", "tr"}, {"from", cu}, {"to", c},
                     {"matrix", matrix_json(tr_[c].at(id).matrix())}};
      if (id != canonical_witness(c, cu)) {
        entry["witness"] = witness_json(id);
        tentry["witness"] = witness_json(id);
      }
      maps.push_back(std::move(entry));
      maps.push_back(std::move(tentry));
    }
  }
  j["maps"] = std::move(maps);
  return j.dump(2);
}

MackeyFunctor MackeyFunctor::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad Mackey JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("group") || !j.contains("levels") || !j.contains("maps"))
    throw ValidationError("Mackey JSON needs \"group\", \"levels\", \"maps\"");

  PermGroupPtr g = PermGroup::from_json(j.at("group").dump());
  const auto& table = g->subgroup_classes();
  const int nc = static_cast<int>(table.size());

  std::vector<FgAbGroup> levels(nc);
  std::vector<bool> seen(nc, false);
  for (const auto& l : j.at("levels")) {
    int c = l.at("class").get<int>();
    if (c < 0 || c >= nc) throw ValidationError("level class index out of range");
    if (seen[c]) throw ValidationError("duplicate level for class " + std::to_string(c));
    seen[c] = true;
    levels[c] = FgAbGroup(l.at("factors").get<std::vector<Int>>());
  }
  for (int c = 0; c < nc; ++c)
    if (!seen[c]) throw ValidationError("missing level for class " + std::to_string(c));

  auto matrix_from = [](const json& rows, int expect_rows, int expect_cols) {
    IntMat m(expect_rows, expect_cols);
    if (static_cast<int>(rows.size()) != expect_rows)
      throw ValidationError("matrix row count mismatch");
    for (int i = 0; i < expect_rows; ++i) {
      const auto& row = rows[i];
      if (static_cast<int>(row.size()) != expect_cols)
        throw ValidationError("matrix column count mismatch");
      for (int jj = 0; jj < expect_cols; ++jj) m(i, jj) = row[jj].get<Int>();
    }
    return m;
  };

  // Weyl actions, assigned in transversal order per level
  std::vector<std::vector<AbHom>> weyl(nc);
  std::vector<std::vector<int>> transversal(nc);
  for (int c = 0; c < nc; ++c) {
    transversal[c] = g->weyl_transversal(table.representatives[c]);
    weyl[c].push_back(AbHom::identity(levels[c]));
  }
  for (const auto& entry : j.at("maps")) {
    if (entry.at("kind").get<std::string>() != "weyl") continue;
    int c = entry.at("from").get<int>();
    if (c != entry.at("to").get<int>()) throw ValidationError("weyl entry must be an endo");
    if (c < 0 || c >= nc) throw ValidationError("weyl level index out of range");
    if (weyl[c].size() >= transversal[c].size())
      throw ValidationError("too many weyl entries for class " + std::to_string(c));
    weyl[c].emplace_back(levels[c], levels[c],
                         matrix_from(entry.at("matrix"), levels[c].rank(), levels[c].rank()));
  }
  for (int c = 0; c < nc; ++c)
    if (weyl[c].size() != transversal[c].size())
      throw ValidationError("expected " + std::to_string(transversal[c].size() - 1) +
                            " weyl entries for class " + std::to_string(c));

  std::vector<std::map<int, AbHom>> res(nc), tr(nc);
  for (int c = 0; c < nc; ++c) {
    int rep_id = g->class_rep_id(c);
    res[c].emplace(rep_id, AbHom::identity(levels[c]));
    tr[c].emplace(rep_id, AbHom::identity(levels[c]));
  }

  // helper mirroring MackeyFunctor::eval_conj before assembly
  auto eval_conj_pre = [&](int elem, int u_id) {
    int cu = g->class_of_id(u_id);
    int up = g->conj_subgroup_id(elem, u_id);
    int n = g->mul(g->conjugator_of_id(up), g->mul(elem, g->inv(g->conjugator_of_id(u_id))));
    const Subgroup& rep = table.representatives[cu];
    for (std::size_t w = 0; w < transversal[cu].size(); ++w)
      if (rep.contains_index(g->mul(g->inv(transversal[cu][w]), n))) return weyl[cu][w];
    throw ValidationError("conjugation landed outside the normalizer");
  };

  auto locate_witness = [&](const json& entry, int c, int target_cls) {
    const Subgroup& r = table.representatives[c];
    if (entry.contains("witness")) {
      std::vector<int> ids;
      for (const auto& perm : entry.at("witness")) {
        int e = g->index_of(Permutation(perm.get<std::vector<int>>()));
        if (e < 0) throw ValidationError("witness permutation is not a group element");
        ids.push_back(e);
      }
      Subgroup u = g->subgroup_from_indices(std::move(ids));
      if (!r.contains(u)) throw ValidationError("witness is not inside the class representative");
      if (g->subgroup_classes().class_of(u) != target_cls)
        throw ValidationError("witness class does not match the map endpoints");
      return g->lattice_id(u);
    }
    for (std::size_t id = 0; id < g->all_subgroups().size(); ++id)
      if (g->class_of_id(static_cast<int>(id)) == target_cls &&
          r.contains(g->lattice_subgroup(static_cast<int>(id))))
        return static_cast<int>(id);
    throw ValidationError("map endpoints admit no witness subgroup");
  };

  for (const auto& entry : j.at("maps")) {
    std::string kind = entry.at("kind").get<std::string>();
    if (kind == "weyl") continue;
    int from = entry.at("from").get<int>();
    int to = entry.at("to").get<int>();
    if (from < 0 || from >= nc || to < 0 || to >= nc)
      throw ValidationError("map level index out of range");
    if (kind == "res") {
      int u_id = locate_witness(entry, from, to);
      if (res[from].count(u_id))
        throw ValidationError("duplicate res entry for one witness subgroup");
      res[from].emplace(u_id,
                        AbHom(levels[from], levels[to],
                              matrix_from(entry.at("matrix"), levels[to].rank(),
                                          levels[from].rank())));
    } else if (kind == "tr") {
      int u_id = locate_witness(entry, to, from);
      if (tr[to].count(u_id))
        throw ValidationError("duplicate tr entry for one witness subgroup");
      tr[to].emplace(u_id, AbHom(levels[from], levels[to],
                                 matrix_from(entry.at("matrix"), levels[to].rank(),
                                             levels[from].rank())));
    } else {
      throw ValidationError("unknown map kind: " + kind);
    }
  }

  // eval formulas on the partially filled tables; intermediates always live
  // at strictly smaller classes, which are completed first
  auto eval_res_pre = [&](int u_id, int w_id) {
    int cw = g->class_of_id(w_id);
    int cu = g->class_of_id(u_id);
    int tw = g->conjugator_of_id(w_id);
    int tu = g->conjugator_of_id(u_id);
    int hpp = g->conj_subgroup_id(tw, u_id);
    int thpp = g->conjugator_of_id(hpp);
    int n = g->mul(tu, g->mul(g->inv(tw), g->inv(thpp)));
    const Subgroup& rep = table.representatives[cu];
    for (std::size_t w = 0; w < transversal[cu].size(); ++w)
      if (rep.contains_index(g->mul(g->inv(transversal[cu][w]), n)))
        return compose(weyl[cu][w], res[cw].at(hpp));
    throw ValidationError("restriction transport landed outside the normalizer");
  };
  auto eval_tr_pre = [&](int u_id, int w_id) {
    int cw = g->class_of_id(w_id);
    int cu = g->class_of_id(u_id);
    int tw = g->conjugator_of_id(w_id);
    int tu = g->conjugator_of_id(u_id);
    int hpp = g->conj_subgroup_id(tw, u_id);
    int thpp = g->conjugator_of_id(hpp);
    int n = g->mul(thpp, g->mul(tw, g->inv(tu)));
    const Subgroup& rep = table.representatives[cu];
    for (std::size_t w = 0; w < transversal[cu].size(); ++w)
      if (rep.contains_index(g->mul(g->inv(transversal[cu][w]), n)))
        return compose(tr[cw].at(hpp), weyl[cu][w]);
    throw ValidationError("transfer transport landed outside the normalizer");
  };

  auto conjugation_closure = [&](int c) {
    const Subgroup& r = table.representatives[c];
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> have;
      for (const auto& kv : res[c]) have.push_back(kv.first);
      for (const auto& kv : tr[c]) have.push_back(kv.first);
      std::sort(have.begin(), have.end());
      have.erase(std::unique(have.begin(), have.end()), have.end());
      for (int id : have)
        for (int a : r.element_indices()) {
          int other = g->conj_subgroup_id(a, id);
          if (res[c].count(id) && !res[c].count(other)) {
            res[c].emplace(other, compose(eval_conj_pre(a, id), res[c].at(id)));
            grew = true;
          }
          if (tr[c].count(id) && !tr[c].count(other)) {
            tr[c].emplace(other, compose(tr[c].at(id), eval_conj_pre(g->inv(a), other)));
            grew = true;
          }
        }
    }
  };

  // complete: conjugation closure, then transitivity through stored
  // intermediates, largest subgroups first; classes in increasing order
  for (int c = 0; c < nc; ++c) {
    conjugation_closure(c);
    const Subgroup& r = table.representatives[c];
    std::vector<int> subs;
    for (std::size_t id = 0; id < g->all_subgroups().size(); ++id)
      if (r.contains(g->lattice_subgroup(static_cast<int>(id))))
        subs.push_back(static_cast<int>(id));
    std::sort(subs.begin(), subs.end(), [&](int a, int b) {
      if (g->lattice_subgroup(a).order() != g->lattice_subgroup(b).order())
        return g->lattice_subgroup(a).order() > g->lattice_subgroup(b).order();
      return a < b;
    });
    for (int u : subs) {
      if (res[c].count(u) && tr[c].count(u)) continue;
      int chosen = -1;
      for (int w : subs) {
        if (w == u || w == g->class_rep_id(c)) continue;
        if (!res[c].count(w) || !tr[c].count(w)) continue;
        if (!g->lattice_subgroup(w).contains(g->lattice_subgroup(u))) continue;
        chosen = w;
        break;
      }
      if (chosen < 0)
        throw ValidationError("maps of class " + std::to_string(c) +
                              " are underdetermined at a subgroup of order " +
                              std::to_string(g->lattice_subgroup(u).order()));
      if (!res[c].count(u)) res[c].emplace(u, compose(eval_res_pre(u, chosen), res[c].at(chosen)));
      if (!tr[c].count(u)) tr[c].emplace(u, compose(tr[c].at(chosen), eval_tr_pre(u, chosen)));
      conjugation_closure(c);
    }
  }
  return MackeyFunctor::from_parts(g, std::move(levels), std::move(weyl), std::move(res),
                                   std::move(tr));
}

}  // namespace equilab
