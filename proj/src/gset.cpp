#include "equilab/gset.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include <nlohmann/json.hpp>

namespace equilab {

using nlohmann::json;

GSetPtr GSet::make(Subgroup group, int size, std::vector<std::vector<int>> action) {
  if (size < 0) throw ValidationError("negative G-set size");
  if (action.size() != group.order()) throw ValidationError("action table size mismatch");

  auto x = std::shared_ptr<GSet>(new GSet());
  x->group_ = std::move(group);
  x->size_ = size;
  x->action_ = std::move(action);

  const PermGroup& g = *x->group_.parent();
  const auto& elems = x->group_.element_indices();
  x->local_of_parent_.assign(g.order(), -1);
  for (std::size_t k = 0; k < elems.size(); ++k)
    x->local_of_parent_[elems[k]] = static_cast<int>(k);

  // each row must be a permutation of the points
  for (const auto& row : x->action_) {
    if (static_cast<int>(row.size()) != size) throw ValidationError("action row size mismatch");
    std::vector<bool> seen(size, false);
    for (int v : row) {
      if (v < 0 || v >= size || seen[v]) throw ValidationError("action row is not a permutation");
      seen[v] = true;
    }
  }
  // identity and the homomorphism law, exhaustively
  int id_local = x->local_of_parent_[g.identity_index()];
  for (int p = 0; p < size; ++p)
    if (x->action_[id_local][p] != p) throw ValidationError("identity must act trivially");
  const int n = static_cast<int>(elems.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = x->local_of_parent_[g.mul(elems[a], elems[b])];
      for (int p = 0; p < size; ++p)
        if (x->action_[ab][p] != x->action_[a][x->action_[b][p]])
          throw ValidationError("action is not a homomorphism");
    }
  return x;
}

GSetPtr GSet::from_generator_action(const PermGroupPtr& g, int size,
                                    const std::vector<std::vector<int>>& gen_action) {
  if (gen_action.size() != g->generators().size())
    throw ValidationError("one action row per generator required");
  std::vector<std::vector<int>> full(g->order());
  std::vector<int> id(size);
  std::iota(id.begin(), id.end(), 0);
  full[g->identity_index()] = id;
  // elements sorted by BFS depth are not contiguous, so walk until settled
  std::vector<bool> done(g->order(), false);
  done[g->identity_index()] = true;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t e = 0; e < g->order(); ++e) {
      if (done[e]) continue;
      auto [prev, gen] = g->factor_step(static_cast<int>(e));
      if (prev < 0 || !done[prev]) continue;
      const auto& ga = gen_action[gen];
      if (static_cast<int>(ga.size()) != size)
        throw ValidationError("generator action row size mismatch");
      std::vector<int> row(size);
      for (int p = 0; p < size; ++p) row[p] = ga[full[prev][p]];
      full[e] = std::move(row);
      done[e] = true;
      progress = true;
    }
  }
  for (bool d : done)
    if (!d) throw ValidationError("generator action could not be extended");
  return make(g->full_subgroup(), size, std::move(full));
}

GSetPtr GSet::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad G-set JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("group") || !j.contains("size") ||
      !j.contains("generator_action"))
    throw ValidationError("G-set JSON needs \"group\", \"size\", \"generator_action\"");
  PermGroupPtr g = PermGroup::from_json(j.at("group").dump());
  std::vector<std::vector<int>> ga;
  for (const auto& row : j.at("generator_action")) ga.push_back(row.get<std::vector<int>>());
  return from_generator_action(g, j.at("size").get<int>(), ga);
}

int GSet::act(int parent_elem, int point) const {
  int k = local_of_parent_[parent_elem];
  if (k < 0) throw DomainError("element is not in the acting subgroup");
  return action_[k][point];
}

GMap::GMap(GSetPtr src, GSetPtr tgt, std::vector<int> imgs)
    : source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
  if (!(source->group() == target->group()))
    throw DomainError("equivariant map requires one acting group");
  if (static_cast<int>(images.size()) != source->size())
    throw ValidationError("map table size mismatch");
  for (int v : images)
    if (v < 0 || v >= target->size()) throw ValidationError("map image out of range");
  const auto n = static_cast<int>(source->group().order());
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < source->size(); ++x)
      if (images[source->act_local(k, x)] != target->act_local(k, images[x]))
        throw ValidationError("map is not equivariant");
}

GMap compose(const GMap& g, const GMap& f) {
  if (!(*f.target == *g.source)) throw DomainError("maps are not composable");
  std::vector<int> im(f.images.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = g.images[f.images[i]];
  return GMap(f.source, g.target, std::move(im));
}

GMap identity_map(const GSetPtr& x) {
  std::vector<int> im(x->size());
  std::iota(im.begin(), im.end(), 0);
  return GMap(x, x, std::move(im));
}

// ---------------------------------------------------------------------------

GSetPtr coset_gset(const Subgroup& big, const Subgroup& small) {
  if (!big.contains(small)) throw DomainError("coset G-set requires containment");
  const PermGroup& g = *big.parent();
  std::vector<int> reps = PermGroup::coset_transversal(big, small);
  std::map<int, int> coset_of;  // element -> coset index
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (int s : small.element_indices()) coset_of[g.mul(reps[c], s)] = static_cast<int>(c);

  const auto& elems = big.element_indices();
  std::vector<std::vector<int>> action(elems.size(), std::vector<int>(reps.size()));
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (std::size_t c = 0; c < reps.size(); ++c)
      action[k][c] = coset_of.at(g.mul(elems[k], reps[c]));
  return GSet::make(big, static_cast<int>(reps.size()), std::move(action));
}

GSetPtr coset_gset(const PermGroupPtr& g, const Subgroup& h) {
  return coset_gset(g->full_subgroup(), h);
}

OrbitDecomposition orbits_decompose(const GSet& x) {
  const Subgroup& grp = x.group();
  const PermGroup& g = *grp.parent();
  OrbitDecomposition dec;
  std::vector<bool> seen(x.size(), false);
  for (int p = 0; p < x.size(); ++p) {
    if (seen[p]) continue;
    Orbit orb;
    orb.base_point = p;
    for (std::size_t k = 0; k < grp.order(); ++k) {
      int q = x.act_local(static_cast<int>(k), p);
      if (!seen[q]) {
        seen[q] = true;
        orb.points.push_back(q);
      }
    }
    std::sort(orb.points.begin(), orb.points.end());
    std::vector<int> stab;
    for (std::size_t k = 0; k < grp.order(); ++k)
      if (x.act_local(static_cast<int>(k), p) == p) stab.push_back(grp.element_indices()[k]);
    orb.stabilizer = Subgroup(grp.parent(), std::move(stab));
    orb.class_index = g.subgroup_classes().class_of(orb.stabilizer);
    if (orb.points.size() * orb.stabilizer.order() != grp.order())
      throw ValidationError("orbit-stabilizer mismatch");
    dec.orbits.push_back(std::move(orb));
  }
  return dec;
}

std::vector<int> OrbitDecomposition::stabilizer_class_multiset() const {
  std::vector<int> out;
  out.reserve(orbits.size());
  for (const auto& o : orbits) out.push_back(o.class_index);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> fixed_points(const GSet& x, const Subgroup& h) {
  if (!x.group().contains(h)) throw DomainError("fixed points require H <= acting group");
  std::vector<int> out;
  for (int p = 0; p < x.size(); ++p) {
    bool fixed = true;
    for (int e : h.element_indices())
      if (x.act(e, p) != p) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(p);
  }
  return out;
}

Pullback pullback(const GMap& f, const GMap& g) {
  if (!(*f.target == *g.target)) throw DomainError("pullback requires a common target");
  if (!(f.source->group() == g.source->group()))
    throw DomainError("pullback requires one acting group");
  const Subgroup& grp = f.source->group();

  Pullback pb;
  std::map<std::pair<int, int>, int> index;
  for (int x = 0; x < f.source->size(); ++x)
    for (int y = 0; y < g.source->size(); ++y)
      if (f.images[x] == g.images[y]) {
        index[{x, y}] = static_cast<int>(pb.pairs.size());
        pb.pairs.emplace_back(x, y);
      }

  std::vector<std::vector<int>> action(grp.order(), std::vector<int>(pb.pairs.size()));
  for (std::size_t k = 0; k < grp.order(); ++k)
    for (std::size_t i = 0; i < pb.pairs.size(); ++i) {
      auto [x, y] = pb.pairs[i];
      action[k][i] = index.at({f.source->act_local(static_cast<int>(k), x),
                               g.source->act_local(static_cast<int>(k), y)});
    }
  pb.apex = GSet::make(grp, static_cast<int>(pb.pairs.size()), std::move(action));

  std::vector<int> to_x(pb.pairs.size()), to_y(pb.pairs.size());
  for (std::size_t i = 0; i < pb.pairs.size(); ++i) {
    to_x[i] = pb.pairs[i].first;
    to_y[i] = pb.pairs[i].second;
  }
  pb.to_x = GMap(pb.apex, f.source, std::move(to_x));
  pb.to_y = GMap(pb.apex, g.source, std::move(to_y));
  return pb;
}

GSetPtr trivial_gset(const Subgroup& group, int size) {
  std::vector<int> id(size);
  std::iota(id.begin(), id.end(), 0);
  return GSet::make(group, size, std::vector<std::vector<int>>(group.order(), id));
}

Pullback product(const GSetPtr& x, const GSetPtr& y) {
  GSetPtr pt = trivial_gset(x->group(), 1);
  GMap fx(x, pt, std::vector<int>(x->size(), 0));
  GMap fy(y, pt, std::vector<int>(y->size(), 0));
  return pullback(fx, fy);
}

GSetPtr restrict_gset(const GSetPtr& x, const Subgroup& h) {
  if (!x->group().contains(h)) throw DomainError("restriction requires H <= acting group");
  std::vector<std::vector<int>> action;
  action.reserve(h.order());
  for (int e : h.element_indices()) {
    std::vector<int> row(x->size());
    for (int p = 0; p < x->size(); ++p) row[p] = x->act(e, p);
    action.push_back(std::move(row));
  }
  return GSet::make(h, x->size(), std::move(action));
}

GSetPtr induce(const Subgroup& k, const GSetPtr& x) {
  const Subgroup& h = x->group();
  if (!k.contains(h)) throw DomainError("induction requires H <= K");
  const PermGroup& g = *k.parent();
  std::vector<int> reps = PermGroup::coset_transversal(k, h);
  std::map<int, std::pair<int, int>> locate;  // element -> (coset, h-part)
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (int s : h.element_indices()) locate[g.mul(reps[c], s)] = {static_cast<int>(c), s};

  const int nx = x->size();
  const int size = static_cast<int>(reps.size()) * nx;
  const auto& elems = k.element_indices();
  std::vector<std::vector<int>> action(elems.size(), std::vector<int>(size));
  for (std::size_t e = 0; e < elems.size(); ++e)
    for (std::size_t c = 0; c < reps.size(); ++c) {
      auto [c2, hpart] = locate.at(g.mul(elems[e], reps[c]));
      for (int p = 0; p < nx; ++p)
        action[e][static_cast<int>(c) * nx + p] = c2 * nx + x->act(hpart, p);
    }
  return GSet::make(k, size, std::move(action));
}

GSetPtr coinduce(const Subgroup& k, const GSetPtr& x, Int size_guard) {
  const Subgroup& h = x->group();
  if (!k.contains(h)) throw DomainError("coinduction requires H <= K");
  const PermGroup& g = *k.parent();

  // right cosets H\K: transversal of least representatives
  std::vector<int> reps;
  std::map<int, std::pair<int, int>> locate;  // element -> (right coset, h-part): e = h * rep
  {
    std::vector<bool> covered(g.order(), false);
    for (int e : k.element_indices()) {
      if (covered[e]) continue;
      int c = static_cast<int>(reps.size());
      reps.push_back(e);
      for (int s : h.element_indices()) {
        int m = g.mul(s, e);
        covered[m] = true;
        locate[m] = {c, s};
      }
    }
  }
  const int t = static_cast<int>(reps.size());
  const Int nx = x->size();
  Int size = 1;
  for (int i = 0; i < t; ++i) {
    size *= nx;
    if (size > size_guard) throw SizeError("coinduced G-set exceeds the size guard");
  }

  auto decode = [&](Int code) {
    std::vector<int> tup(t);
    for (int i = 0; i < t; ++i) {
      tup[i] = static_cast<int>(code % nx);
      code /= nx;
    }
    return tup;
  };
  auto encode = [&](const std::vector<int>& tup) {
    Int code = 0;
    for (int i = t - 1; i >= 0; --i) code = code * nx + tup[i];
    return code;
  };

  const auto& elems = k.element_indices();
  std::vector<std::vector<int>> action(elems.size(), std::vector<int>(size));
  for (std::size_t e = 0; e < elems.size(); ++e) {
    // (k'·φ)(r_j) = φ(r_j k') = h_j · φ(r_{j'}) with r_j k' = h_j r_{j'}
    std::vector<std::pair<int, int>> move(t);
    for (int j = 0; j < t; ++j) {
      auto [j2, hpart] = locate.at(g.mul(reps[j], elems[e]));
      move[j] = {j2, hpart};
    }
    for (Int code = 0; code < size; ++code) {
      std::vector<int> tup = decode(code);
      std::vector<int> out(t);
      for (int j = 0; j < t; ++j) out[j] = x->act(move[j].second, tup[move[j].first]);
      action[e][code] = static_cast<int>(encode(out));
    }
  }
  return GSet::make(k, static_cast<int>(size), std::move(action));
}

GSetPtr disjoint_union(const GSetPtr& x, const GSetPtr& y) {
  if (!(x->group() == y->group())) throw DomainError("disjoint union requires one acting group");
  const int nx = x->size();
  const int size = nx + y->size();
  std::vector<std::vector<int>> action(x->group().order(), std::vector<int>(size));
  for (std::size_t k = 0; k < x->group().order(); ++k) {
    for (int p = 0; p < nx; ++p) action[k][p] = x->act_local(static_cast<int>(k), p);
    for (int p = 0; p < y->size(); ++p)
      action[k][nx + p] = nx + y->act_local(static_cast<int>(k), p);
  }
  return GSet::make(x->group(), size, std::move(action));
}

namespace {

// least conjugate of the stabilizer under the acting subgroup; a complete
// invariant of the orbit as an A-set (parent-group classes are too coarse
// when fusion happens)
std::vector<int> canonical_stabilizer_form(const Subgroup& acting, const Subgroup& stab) {
  const PermGroup& g = *acting.parent();
  std::vector<int> best;
  for (int a : acting.element_indices()) {
    std::vector<int> image;
    image.reserve(stab.order());
    for (int s : stab.element_indices()) image.push_back(g.conj(a, s));
    std::sort(image.begin(), image.end());
    if (best.empty() || image < best) best = std::move(image);
  }
  return best;
}

std::vector<std::vector<int>> stabilizer_forms(const GSet& x) {
  std::vector<std::vector<int>> out;
  for (const auto& orb : orbits_decompose(x).orbits)
    out.push_back(canonical_stabilizer_form(x.group(), orb.stabilizer));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool are_isomorphic(const GSet& x, const GSet& y) {
  if (!(x.group() == y.group())) throw DomainError("isomorphism requires one acting group");
  if (x.size() != y.size()) return false;
  return stabilizer_forms(x) == stabilizer_forms(y);
}

Int count_equivariant_maps(const GSet& x, const GSet& y) {
  Int total = 1;
  for (const auto& orb : orbits_decompose(x).orbits)
    total *= static_cast<Int>(fixed_points(y, orb.stabilizer).size());
  return total;
}

Int count_equivariant_maps_brute(const GSet& x, const GSet& y) {
  if (x.size() > 0 && y.size() == 0) return 0;
  // walk all functions; equivariance checked directly
  Int total = 0;
  std::vector<int> f(x.size(), 0);
  const Int limit = 2000000;
  Int tried = 0;
  while (true) {
    bool ok = true;
    for (std::size_t k = 0; ok && k < x.group().order(); ++k)
      for (int p = 0; ok && p < x.size(); ++p)
        if (f[x.act_local(static_cast<int>(k), p)] != y.act_local(static_cast<int>(k), f[p]))
          ok = false;
    if (ok) ++total;
    if (++tried > limit) throw SizeError("brute-force map count too large");
    int i = 0;
    while (i < x.size() && ++f[i] == y.size()) f[i++] = 0;
    if (i == x.size()) break;
  }
  return total;
}

std::vector<GMap> coset_maps(const GSetPtr& gh, const GSetPtr& gk, const Subgroup& h,
                             const Subgroup& k) {
  const PermGroup& g = *h.parent();
  Subgroup full = g.full_subgroup();
  std::vector<int> h_reps = PermGroup::coset_transversal(full, h);
  std::vector<int> k_reps = PermGroup::coset_transversal(full, k);
  std::map<int, int> k_coset_of;
  for (std::size_t c = 0; c < k_reps.size(); ++c)
    for (int s : k.element_indices()) k_coset_of[g.mul(k_reps[c], s)] = static_cast<int>(c);

  std::vector<GMap> out;
  for (int a : k_reps) {
    // xH -> xaK is well defined iff a^{-1} H a <= K
    bool ok = true;
    for (int e : h.element_indices())
      if (!k.contains_index(g.conj(g.inv(a), e))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<int> images(h_reps.size());
    for (std::size_t c = 0; c < h_reps.size(); ++c)
      images[c] = k_coset_of.at(g.mul(h_reps[c], a));
    out.emplace_back(gh, gk, std::move(images));
  }
  return out;
}

OrbitCategoryData orbit_category_data(const PermGroupPtr& g, std::vector<int> object_classes) {
  const auto& table = g->subgroup_classes();
  if (object_classes.empty()) {
    object_classes.resize(table.size());
    std::iota(object_classes.begin(), object_classes.end(), 0);
  }
  std::sort(object_classes.begin(), object_classes.end());

  OrbitCategoryData data;
  std::vector<std::string> names;
  for (int cls : object_classes) {
    names.push_back("G/H" + std::to_string(cls));
    data.object_class.push_back(cls);
    data.object_gset.push_back(coset_gset(g, table.representatives[cls]));
  }

  std::vector<FiniteCategory::Mor> mors;
  std::vector<int> identities(object_classes.size(), -1);
  for (std::size_t a = 0; a < object_classes.size(); ++a)
    for (std::size_t b = 0; b < object_classes.size(); ++b) {
      auto maps = coset_maps(data.object_gset[a], data.object_gset[b],
                             table.representatives[object_classes[a]],
                             table.representatives[object_classes[b]]);
      for (std::size_t i = 0; i < maps.size(); ++i) {
        int m = static_cast<int>(mors.size());
        mors.push_back({static_cast<int>(a), static_cast<int>(b),
                        names[a] + ">" + names[b] + "#" + std::to_string(i)});
        data.morphism_map.push_back(maps[i]);
        if (a == b) {
          bool is_id = true;
          for (std::size_t p = 0; p < maps[i].images.size(); ++p)
            if (maps[i].images[p] != static_cast<int>(p)) is_id = false;
          if (is_id) identities[a] = m;
        }
      }
    }

  std::map<std::tuple<int, int, std::vector<int>>, int> mor_index;
  for (std::size_t m = 0; m < mors.size(); ++m)
    mor_index[{mors[m].src, mors[m].dst, data.morphism_map[m].images}] = static_cast<int>(m);

  std::map<std::pair<int, int>, int> comp;
  for (std::size_t gi = 0; gi < mors.size(); ++gi)
    for (std::size_t fi = 0; fi < mors.size(); ++fi) {
      if (mors[fi].dst != mors[gi].src) continue;
      GMap composite = compose(data.morphism_map[gi], data.morphism_map[fi]);
      auto it = mor_index.find({mors[fi].src, mors[gi].dst, composite.images});
      if (it == mor_index.end())
        throw ValidationError("orbit category composition fell outside the table");
      comp[{static_cast<int>(gi), static_cast<int>(fi)}] = it->second;
    }

  data.category = FiniteCategory::validate_category(std::move(names), std::move(mors),
                                                    std::move(identities), comp);
  return data;
}

FiniteCategory orbit_category(const PermGroupPtr& g, std::vector<int> object_classes) {
  return orbit_category_data(g, std::move(object_classes)).category;
}

}  // namespace equilab
