#include "equilab/category.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace equilab {

using nlohmann::json;

FiniteCategory FiniteCategory::validate_category(std::vector<std::string> objects,
                                                 std::vector<Mor> morphisms,
                                                 std::vector<int> identities,
                                                 const std::map<std::pair<int, int>, int>& comp) {
  FiniteCategory c;
  c.objects_ = std::move(objects);
  c.mors_ = std::move(morphisms);
  c.identity_ = std::move(identities);

  const int nobj = c.num_objects();
  const int nmor = c.num_morphisms();
  if (static_cast<int>(c.identity_.size()) != nobj)
    throw ValidationError("one identity per object required");
  for (const auto& m : c.mors_)
    if (m.src < 0 || m.src >= nobj || m.dst < 0 || m.dst >= nobj)
      throw ValidationError("morphism endpoints out of range");
  for (int o = 0; o < nobj; ++o) {
    int id = c.identity_[o];
    if (id < 0 || id >= nmor || c.mors_[id].src != o || c.mors_[id].dst != o)
      throw ValidationError("identity of " + c.objects_[o] + " is not an endomorphism");
  }

  c.comp_.assign(nmor, std::vector<int>(nmor, -1));
  for (const auto& [pair, h] : comp) {
    auto [g, f] = pair;
    if (g < 0 || g >= nmor || f < 0 || f >= nmor || h < 0 || h >= nmor)
      throw ValidationError("composition table index out of range");
    if (c.mors_[f].dst != c.mors_[g].src)
      throw ValidationError("composition given for non-composable pair " + c.mors_[g].name +
                            "∘" + c.mors_[f].name);
    if (c.mors_[h].src != c.mors_[f].src || c.mors_[h].dst != c.mors_[g].dst)
      throw ValidationError("composite " + c.mors_[h].name + " has wrong endpoints");
    c.comp_[g][f] = h;
  }
  for (int g = 0; g < nmor; ++g)
    for (int f = 0; f < nmor; ++f)
      if (c.mors_[f].dst == c.mors_[g].src && c.comp_[g][f] < 0)
        throw ValidationError("composition undefined for composable pair " + c.mors_[g].name +
                              "∘" + c.mors_[f].name);

  // identity laws
  for (int f = 0; f < nmor; ++f) {
    if (c.comp_[c.identity_[c.mors_[f].dst]][f] != f)
      throw ValidationError("left identity law fails at " + c.mors_[f].name);
    if (c.comp_[f][c.identity_[c.mors_[f].src]] != f)
      throw ValidationError("right identity law fails at " + c.mors_[f].name);
  }
  // associativity over all composable triples
  for (int h = 0; h < nmor; ++h)
    for (int g = 0; g < nmor; ++g) {
      if (c.mors_[g].dst != c.mors_[h].src) continue;
      int hg = c.comp_[h][g];
      for (int f = 0; f < nmor; ++f) {
        if (c.mors_[f].dst != c.mors_[g].src) continue;
        if (c.comp_[hg][f] != c.comp_[h][c.comp_[g][f]])
          throw ValidationError("associativity fails at (" + c.mors_[h].name + ", " +
                                c.mors_[g].name + ", " + c.mors_[f].name + ")");
      }
    }

  c.hom_.assign(nobj, std::vector<std::vector<int>>(nobj));
  for (int m = 0; m < nmor; ++m) c.hom_[c.mors_[m].src][c.mors_[m].dst].push_back(m);
  return c;
}

int FiniteCategory::compose(int g, int f) const {
  if (mors_[f].dst != mors_[g].src) throw DomainError("morphisms are not composable");
  return comp_[g][f];
}

FiniteCategory FiniteCategory::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad category JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("objects") || !j.contains("hom") || !j.contains("id") ||
      !j.contains("comp"))
    throw ValidationError("category JSON needs \"objects\", \"hom\", \"id\", \"comp\"");

  std::vector<std::string> objects = j.at("objects").get<std::vector<std::string>>();
  std::map<std::string, int> obj_index;
  for (std::size_t i = 0; i < objects.size(); ++i) obj_index[objects[i]] = static_cast<int>(i);

  std::vector<Mor> mors;
  std::map<std::string, int> mor_index;
  for (const auto& [key, list] : j.at("hom").items()) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw ValidationError("hom key must look like \"a|b\"");
    std::string a = key.substr(0, bar), b = key.substr(bar + 1);
    if (!obj_index.count(a) || !obj_index.count(b))
      throw ValidationError("hom key references unknown object: " + key);
    for (const auto& name : list) {
      std::string n = name.get<std::string>();
      if (mor_index.count(n)) throw ValidationError("duplicate morphism name: " + n);
      mor_index[n] = static_cast<int>(mors.size());
      mors.push_back({obj_index.at(a), obj_index.at(b), n});
    }
  }

  std::vector<int> identities(objects.size(), -1);
  for (const auto& [obj, name] : j.at("id").items()) {
    if (!obj_index.count(obj)) throw ValidationError("id references unknown object: " + obj);
    if (!mor_index.count(name.get<std::string>()))
      throw ValidationError("id references unknown morphism");
    identities[obj_index.at(obj)] = mor_index.at(name.get<std::string>());
  }

  std::map<std::pair<int, int>, int> comp;
  for (const auto& [key, val] : j.at("comp").items()) {
    auto circ = key.find("∘");
    if (circ == std::string::npos) throw ValidationError("comp key must look like \"g∘f\"");
    std::string gname = key.substr(0, circ);
    std::string fname = key.substr(circ + std::string("∘").size());
    if (!mor_index.count(gname) || !mor_index.count(fname) ||
        !mor_index.count(val.get<std::string>()))
      throw ValidationError("comp references unknown morphism: " + key);
    comp[{mor_index.at(gname), mor_index.at(fname)}] = mor_index.at(val.get<std::string>());
  }
  return validate_category(std::move(objects), std::move(mors), std::move(identities), comp);
}

std::string FiniteCategory::to_json() const {
  json j;
  j["objects"] = objects_;
  json hom = json::object();
  for (int a = 0; a < num_objects(); ++a)
    for (int b = 0; b < num_objects(); ++b) {
      if (hom_[a][b].empty()) continue;
      json list = json::array();
      for (int m : hom_[a][b]) list.push_back(mors_[m].name);
      hom[objects_[a] + "|" + objects_[b]] = std::move(list);
    }
  j["hom"] = std::move(hom);
  json ids = json::object();
  for (int o = 0; o < num_objects(); ++o) ids[objects_[o]] = mors_[identity_[o]].name;
  j["id"] = std::move(ids);
  json comp = json::object();
  for (int g = 0; g < num_morphisms(); ++g)
    for (int f = 0; f < num_morphisms(); ++f)
      if (comp_[g][f] >= 0)
        comp[mors_[g].name + "∘" + mors_[f].name] = mors_[comp_[g][f]].name;
  j["comp"] = std::move(comp);
  return j.dump();
}

// ---------------------------------------------------------------------------
// Presheaves

Presheaf::Presheaf(const FiniteCategory& base, std::vector<int> value_sizes,
                   std::vector<std::vector<int>> restriction)
    : base_(&base), value_sizes_(std::move(value_sizes)), restriction_(std::move(restriction)) {
  if (static_cast<int>(value_sizes_.size()) != base.num_objects())
    throw ValidationError("one value set per object required");
  if (static_cast<int>(restriction_.size()) != base.num_morphisms())
    throw ValidationError("one restriction per morphism required");
  for (int m = 0; m < base.num_morphisms(); ++m) {
    const auto& mor = base.mor(m);
    if (static_cast<int>(restriction_[m].size()) != value_sizes_[mor.dst])
      throw ValidationError("restriction table size mismatch at " + mor.name);
    for (int v : restriction_[m])
      if (v < 0 || v >= value_sizes_[mor.src])
        throw ValidationError("restriction image out of range at " + mor.name);
  }
  for (int o = 0; o < base.num_objects(); ++o) {
    const auto& row = restriction_[base.identity(o)];
    for (std::size_t s = 0; s < row.size(); ++s)
      if (row[s] != static_cast<int>(s))
        throw ValidationError("presheaf does not respect identities");
  }
  // contravariant functoriality: P(g∘f) = P(f)∘P(g)
  for (int g = 0; g < base.num_morphisms(); ++g)
    for (int f = 0; f < base.num_morphisms(); ++f) {
      if (base.mor(f).dst != base.mor(g).src) continue;
      int gf = base.compose(g, f);
      for (int s = 0; s < value_sizes_[base.mor(g).dst]; ++s)
        if (restriction_[gf][s] != restriction_[f][restriction_[g][s]])
          throw ValidationError("presheaf does not respect composition");
    }
}

Presheaf pullback_presheaf(const FiniteCategory& t, int f, int g) {
  const auto& mf = t.mor(f);
  const auto& mg = t.mor(g);
  if (mf.dst != mg.dst) throw DomainError("cospan legs need a common target");
  const int a = mf.src, b = mg.src;

  // P(d) indexed by pairs (u, v), enumerated in (u, v) lexicographic order
  std::vector<std::vector<std::pair<int, int>>> pairs(t.num_objects());
  std::vector<std::map<std::pair<int, int>, int>> index(t.num_objects());
  std::vector<int> sizes(t.num_objects());
  for (int d = 0; d < t.num_objects(); ++d) {
    for (int u : t.hom(d, a))
      for (int v : t.hom(d, b))
        if (t.compose(f, u) == t.compose(g, v)) {
          index[d][{u, v}] = static_cast<int>(pairs[d].size());
          pairs[d].emplace_back(u, v);
        }
    sizes[d] = static_cast<int>(pairs[d].size());
  }

  std::vector<std::vector<int>> restriction(t.num_morphisms());
  for (int m = 0; m < t.num_morphisms(); ++m) {
    const auto& mor = t.mor(m);
    restriction[m].resize(sizes[mor.dst]);
    for (int s = 0; s < sizes[mor.dst]; ++s) {
      auto [u, v] = pairs[mor.dst][s];
      restriction[m][s] = index[mor.src].at({t.compose(u, m), t.compose(v, m)});
    }
  }
  return Presheaf(t, std::move(sizes), std::move(restriction));
}

std::optional<std::vector<int>> decompose_into_representables(const Presheaf& p) {
  const FiniteCategory& t = p.base();

  // elements (d, s), flattened
  std::vector<std::pair<int, int>> els;
  std::vector<std::vector<int>> el_of(t.num_objects());
  for (int d = 0; d < t.num_objects(); ++d) {
    el_of[d].resize(p.value_size(d));
    for (int s = 0; s < p.value_size(d); ++s) {
      el_of[d][s] = static_cast<int>(els.size());
      els.emplace_back(d, s);
    }
  }
  const int n = static_cast<int>(els.size());

  // union-find over morphism edges (d, P(m)(s')) -- (d', s') for m: d -> d'
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (int m = 0; m < t.num_morphisms(); ++m) {
    const auto& mor = t.mor(m);
    for (int s2 = 0; s2 < p.value_size(mor.dst); ++s2) {
      int x = find(el_of[mor.src][p.restrict_along(m, s2)]);
      int y = find(el_of[mor.dst][s2]);
      if (x != y) uf[std::max(x, y)] = std::min(x, y);
    }
  }

  std::map<int, std::vector<int>> components;
  for (int e = 0; e < n; ++e) components[find(e)].push_back(e);

  std::vector<int> result;
  for (const auto& [root, members] : components) {
    int terminal = -1;
    for (int cand : members) {
      auto [d0, s0] = els[cand];
      bool ok = true;
      for (int e : members) {
        auto [d, s] = els[e];
        int count = 0;
        for (int h : t.hom(d, d0))
          if (p.restrict_along(h, s0) == s) ++count;
        if (count != 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        terminal = cand;
        break;
      }
    }
    if (terminal < 0) return std::nullopt;
    result.push_back(els[terminal].first);
  }
  std::sort(result.begin(), result.end());

  // counting identity |P(d)| = sum_i |Hom(d, a_i)|, re-verified exactly
  for (int d = 0; d < t.num_objects(); ++d) {
    int total = 0;
    for (int obj : result) total += static_cast<int>(t.hom(d, obj).size());
    if (total != p.value_size(d))
      throw ValidationError("representable decomposition failed its counting identity");
  }
  return result;
}

std::pair<bool, std::optional<std::pair<int, int>>> is_orbital(const FiniteCategory& t) {
  for (int f = 0; f < t.num_morphisms(); ++f)
    for (int g = 0; g < t.num_morphisms(); ++g) {
      if (t.mor(f).dst != t.mor(g).dst) continue;
      if (!decompose_into_representables(pullback_presheaf(t, f, g)))
        return {false, std::make_pair(f, g)};
    }
  return {true, std::nullopt};
}

std::pair<bool, std::optional<std::pair<int, int>>> is_atomic(const FiniteCategory& t) {
  for (int r = 0; r < t.num_morphisms(); ++r)
    for (int s = 0; s < t.num_morphisms(); ++s) {
      if (t.mor(s).dst != t.mor(r).src || t.mor(r).dst != t.mor(s).src) continue;
      if (t.compose(r, s) == t.identity(t.mor(s).src) &&
          t.compose(s, r) != t.identity(t.mor(r).src))
        return {false, std::make_pair(r, s)};
    }
  return {true, std::nullopt};
}

OrbitalReport orbital_report(const FiniteCategory& t) {
  OrbitalReport rep;
  auto [orb, ow] = is_orbital(t);
  rep.orbital = orb;
  rep.failing_cospan = ow;
  auto [atomic, aw] = is_atomic(t);
  rep.atomic = atomic;
  rep.failing_retract = aw;
  return rep;
}

// ---------------------------------------------------------------------------
// Builders

FiniteCategory family_subcategory(const PermGroupPtr& g, std::vector<int> family_classes) {
  std::sort(family_classes.begin(), family_classes.end());
  family_classes.erase(std::unique(family_classes.begin(), family_classes.end()),
                       family_classes.end());
  const auto& table = g->subgroup_classes();
  for (int cls : family_classes)
    if (cls < 0 || cls >= static_cast<int>(table.size()))
      throw ValidationError("family class index out of range");

  std::set<int> fam(family_classes.begin(), family_classes.end());
  const auto& subs = g->all_subgroups();
  // closure: K <= L with both classes in the family forces every class
  // realized between them into the family
  for (const auto& k : subs) {
    if (!fam.count(g->subgroup_classes().class_of(k))) continue;
    for (const auto& l : subs) {
      if (!fam.count(g->subgroup_classes().class_of(l)) || !l.contains(k)) continue;
      for (const auto& h : subs)
        if (l.contains(h) && h.contains(k) && !fam.count(g->subgroup_classes().class_of(h)))
          throw ValidationError("family is not closed: missing class of a subgroup of order " +
                                std::to_string(h.order()));
    }
  }
  return orbit_category(g, family_classes);
}

FiniteCategory surj_leq(int n, bool include_empty) {
  if (n < 1 || n > 5) throw SizeError("surj_leq supports 1 <= n <= 5");
  std::vector<int> cards;
  if (include_empty) cards.push_back(0);
  for (int c = 1; c <= n; ++c) cards.push_back(c);

  std::vector<std::string> objects;
  for (int c : cards) objects.push_back(std::to_string(c));
  auto obj_of_card = [&](int c) {
    return static_cast<int>(std::find(cards.begin(), cards.end(), c) - cards.begin());
  };

  // enumerate surjections [m] -> [k] in lexicographic table order
  std::vector<FiniteCategory::Mor> mors;
  std::vector<std::vector<int>> tables;
  std::vector<int> identities(cards.size(), -1);
  for (int m : cards)
    for (int k : cards) {
      std::vector<int> f(m, 0);
      bool more = (k > 0) || (m == 0);
      if (m == 0 && k == 0) {
        int id = static_cast<int>(mors.size());
        mors.push_back({obj_of_card(0), obj_of_card(0), "s0.0#0"});
        tables.push_back({});
        identities[obj_of_card(0)] = id;
        continue;
      }
      if (m == 0 || k == 0) continue;  // no surjections across empty
      int count = 0;
      while (more) {
        std::vector<bool> hit(k, false);
        for (int v : f) hit[v] = true;
        if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
          int id = static_cast<int>(mors.size());
          mors.push_back({obj_of_card(m), obj_of_card(k),
                          "s" + std::to_string(m) + "." + std::to_string(k) + "#" +
                              std::to_string(count)});
          tables.push_back(f);
          bool is_id = (m == k);
          for (int i = 0; i < m && is_id; ++i) is_id = (f[i] == i);
          if (is_id) identities[obj_of_card(m)] = id;
          ++count;
        }
        int i = m - 1;
        while (i >= 0 && ++f[i] == k) f[i--] = 0;
        more = (i >= 0);
      }
    }

  std::map<std::tuple<int, int, std::vector<int>>, int> index;
  for (std::size_t i = 0; i < mors.size(); ++i)
    index[{mors[i].src, mors[i].dst, tables[i]}] = static_cast<int>(i);

  std::map<std::pair<int, int>, int> comp;
  for (std::size_t gi = 0; gi < mors.size(); ++gi)
    for (std::size_t fi = 0; fi < mors.size(); ++fi) {
      if (mors[fi].dst != mors[gi].src) continue;
      std::vector<int> composite(tables[fi].size());
      for (std::size_t x = 0; x < composite.size(); ++x) composite[x] = tables[gi][tables[fi][x]];
      comp[{static_cast<int>(gi), static_cast<int>(fi)}] =
          index.at({mors[fi].src, mors[gi].dst, composite});
    }
  return FiniteCategory::validate_category(std::move(objects), std::move(mors),
                                           std::move(identities), comp);
}

FiniteCategory groupoid_category(const std::vector<PermGroupPtr>& groups) {
  std::vector<std::string> objects;
  std::vector<FiniteCategory::Mor> mors;
  std::vector<int> identities;
  std::map<std::pair<int, int>, int> comp;

  for (std::size_t c = 0; c < groups.size(); ++c) {
    const PermGroup& g = *groups[c];
    int obj = static_cast<int>(objects.size());
    objects.push_back("o" + std::to_string(c));
    std::vector<int> ids(g.order());
    for (std::size_t e = 0; e < g.order(); ++e) {
      ids[e] = static_cast<int>(mors.size());
      mors.push_back({obj, obj, "o" + std::to_string(c) + ".g" + std::to_string(e)});
    }
    identities.push_back(ids[g.identity_index()]);
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t b = 0; b < g.order(); ++b)
        comp[{ids[a], ids[b]}] = ids[g.mul(static_cast<int>(a), static_cast<int>(b))];
  }
  return FiniteCategory::validate_category(std::move(objects), std::move(mors),
                                           std::move(identities), comp);
}

FiniteCategory split_idempotent_category() {
  // objects a, b; r: a->b, s: b->a, rs = id_b, sr = e (a nontrivial idempotent)
  std::vector<std::string> objects{"a", "b"};
  std::vector<FiniteCategory::Mor> mors{
      {0, 0, "id_a"}, {1, 1, "id_b"}, {0, 1, "r"}, {1, 0, "s"}, {0, 0, "e"},
  };
  std::vector<int> identities{0, 1};
  std::map<std::pair<int, int>, int> comp;
  auto set = [&](int g, int f, int h) { comp[{g, f}] = h; };
  // identities
  for (int m = 0; m < 5; ++m) {
    set(m, mors[m].src == 0 ? 0 : 1, m);
    set(mors[m].dst == 0 ? 0 : 1, m, m);
  }
  set(2, 3, 1);  // r∘s = id_b
  set(3, 2, 4);  // s∘r = e
  set(4, 4, 4);  // e∘e = e
  set(2, 4, 2);  // r∘e = r
  set(4, 3, 3);  // e∘s = s
  return FiniteCategory::validate_category(std::move(objects), std::move(mors),
                                           std::move(identities), comp);
}

namespace {

std::vector<std::string> split_string(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

FiniteCategory build_builtin(const std::string& spec) {
  auto parts = split_string(spec, ':');
  if (parts.empty()) throw ValidationError("empty builtin spec");
  const std::string& kind = parts[0];

  if (kind == "surj_leq") {
    if (parts.size() != 2) throw ValidationError("usage: surj_leq:<n>[,empty]");
    auto args = split_string(parts[1], ',');
    bool with_empty = args.size() > 1 && args[1] == "empty";
    return surj_leq(std::stoi(args[0]), with_empty);
  }
  if (kind == "orbit_category") {
    if (parts.size() != 2) throw ValidationError("usage: orbit_category:<group>");
    return orbit_category(PermGroup::parse_spec(parts[1]));
  }
  if (kind == "family") {
    if (parts.size() != 3) throw ValidationError("usage: family:<group>:<class>,<class>,...");
    PermGroupPtr g = PermGroup::parse_spec(parts[1]);
    std::vector<int> classes;
    for (const auto& c : split_string(parts[2], ',')) classes.push_back(std::stoi(c));
    return family_subcategory(g, classes);
  }
  if (kind == "groupoid") {
    if (parts.size() != 2) throw ValidationError("usage: groupoid:<group>,<group>,...");
    std::vector<PermGroupPtr> groups;
    for (const auto& name : split_string(parts[1], ',')) groups.push_back(PermGroup::parse_spec(name));
    return groupoid_category(groups);
  }
  if (kind == "split_idempotent") return split_idempotent_category();
  throw ValidationError("unknown builtin category kind: " + kind);
}

}  // namespace equilab
