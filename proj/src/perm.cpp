#include "equilab/perm.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace equilab {

using nlohmann::json;

Permutation::Permutation(int degree) : images_(degree) {
  if (degree < 0 || degree > kMaxDegree) throw SizeError("permutation degree out of range");
  for (int i = 0; i < degree; ++i) images_[i] = i;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = degree();
  if (n > kMaxDegree) throw SizeError("permutation degree out of range");
  std::vector<bool> seen(n, false);
  for (int v : images_) {
    if (v < 0 || v >= n || seen[v]) throw ValidationError("image list is not a bijection");
    seen[v] = true;
  }
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DomainError("degree mismatch in composition");
  std::vector<int> im(a.degree());
  for (int i = 0; i < a.degree(); ++i) im[i] = a(b(i));
  return Permutation(std::move(im));
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(PermGroupPtr parent, std::vector<int> element_indices)
    : parent_(std::move(parent)), elems_(std::move(element_indices)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  if (elems_.empty() || elems_.front() < 0 ||
      elems_.back() >= static_cast<int>(parent_->order()))
    throw ValidationError("subgroup element indices out of range");
  if (!std::binary_search(elems_.begin(), elems_.end(), parent_->identity_index()))
    throw ValidationError("subgroup must contain the identity");
  for (int a : elems_) {
    if (!std::binary_search(elems_.begin(), elems_.end(), parent_->inv(a)))
      throw ValidationError("subgroup not closed under inverse");
    for (int b : elems_)
      if (!std::binary_search(elems_.begin(), elems_.end(), parent_->mul(a, b)))
        throw ValidationError("subgroup not closed under composition");
  }
}

bool Subgroup::contains_index(int e) const {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end());
}

const Permutation& Subgroup::element(int k) const { return parent_->elements()[elems_[k]]; }

bool Subgroup::is_cyclic() const {
  for (int e : elems_)
    if (parent_->element_order(e) == static_cast<int>(order())) return true;
  return false;
}

bool Subgroup::operator<(const Subgroup& o) const {
  if (order() != o.order()) return order() < o.order();
  return elems_ < o.elems_;
}

// ---------------------------------------------------------------------------
// PermGroup construction

PermGroupPtr PermGroup::close_group(int degree, std::vector<Permutation> generators,
                                    std::size_t order_bound) {
  if (degree < 0 || degree > kMaxDegree) throw SizeError("degree out of range (max 32)");
  for (const auto& g : generators)
    if (g.degree() != degree) throw ValidationError("generator degree mismatch");

  auto grp = PermGroupPtr(new PermGroup());
  auto* g = const_cast<PermGroup*>(grp.get());
  g->degree_ = degree;
  g->generators_ = generators;

  // BFS closure over words in the generators
  std::map<Permutation, std::pair<int, int>> parent_of;  // element -> (prev position, gen)
  std::vector<Permutation> queue;
  queue.emplace_back(degree);
  parent_of.emplace(queue.front(), std::make_pair(-1, -1));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Permutation cur = queue[head];
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
      Permutation next = generators[gi] * cur;
      if (parent_of.count(next)) continue;
      if (queue.size() >= order_bound) throw SizeError("group order exceeds configured bound");
      parent_of.emplace(next, std::make_pair(static_cast<int>(head), static_cast<int>(gi)));
      queue.push_back(std::move(next));
    }
  }

  g->elements_.reserve(queue.size());
  for (auto& [perm, _] : parent_of) g->elements_.push_back(perm);  // map iterates sorted

  std::map<Permutation, int> index;
  for (std::size_t i = 0; i < g->elements_.size(); ++i) index.emplace(g->elements_[i], static_cast<int>(i));
  g->identity_ = index.at(Permutation(degree));

  // translate BFS parents from queue positions to canonical indices
  g->bfs_parent_.assign(g->elements_.size(), {-1, -1});
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto [prev_q, gen] = parent_of.at(queue[qi]);
    if (prev_q >= 0)
      g->bfs_parent_[index.at(queue[qi])] = {index.at(queue[prev_q]), gen};
  }
  return grp;
}

int PermGroup::index_of(const Permutation& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || !(*it == p)) return -1;
  return static_cast<int>(it - elements_.begin());
}

int PermGroup::mul(int a, int b) const {
  std::call_once(mult_once_, [this] {
    const int n = static_cast<int>(order());
    mult_.resize(static_cast<std::size_t>(n) * n);
    inv_.resize(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        int k = index_of(elements_[i] * elements_[j]);
        mult_[static_cast<std::size_t>(i) * n + j] = k;
        if (k == identity_) inv_[i] = j;
      }
    }
  });
  return mult_[static_cast<std::size_t>(a) * order() + b];
}

int PermGroup::inv(int a) const {
  mul(0, 0);  // ensure tables
  return inv_[a];
}

int PermGroup::element_order(int a) const {
  int n = 1;
  int cur = a;
  while (cur != identity_) {
    cur = mul(cur, a);
    ++n;
  }
  return n;
}

Subgroup PermGroup::full_subgroup() const {
  std::vector<int> all(order());
  for (std::size_t i = 0; i < order(); ++i) all[i] = static_cast<int>(i);
  return Subgroup(shared_from_this(), std::move(all));
}

Subgroup PermGroup::trivial_subgroup() const {
  return Subgroup(shared_from_this(), {identity_});
}

Subgroup PermGroup::subgroup_from_indices(std::vector<int> elems) const {
  return Subgroup(shared_from_this(), std::move(elems));
}

Subgroup PermGroup::subgroup_generated(const std::vector<int>& gens) const {
  std::set<int> got{identity_};
  got.insert(gens.begin(), gens.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(got.begin(), got.end());
    for (int a : cur)
      for (int b : cur)
        if (got.insert(mul(a, b)).second) grew = true;
  }
  return Subgroup(shared_from_this(), std::vector<int>(got.begin(), got.end()));
}

// ---------------------------------------------------------------------------
// Lattice

const PermGroup::Lattice& PermGroup::lattice() const {
  std::call_once(lattice_once_, [this] {
    auto lat = std::make_unique<Lattice>();
    const int n = static_cast<int>(order());
    auto self = shared_from_this();

    // closure of a set under the group operation, as sorted index vector
    auto close = [&](std::vector<int> seed) {
      std::set<int> got(seed.begin(), seed.end());
      got.insert(identity_);
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<int> cur(got.begin(), got.end());
        for (int a : cur)
          for (int b : cur)
            if (got.insert(mul(a, b)).second) grew = true;
      }
      return std::vector<int>(got.begin(), got.end());
    };

    auto is_prime_power = [](int m) {
      if (m < 2) return false;
      for (int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
          while (m % p == 0) m /= p;
          return m == 1;
        }
      return true;
    };

    std::vector<int> prime_power_elems;
    for (int e = 0; e < n; ++e)
      if (is_prime_power(element_order(e))) prime_power_elems.push_back(e);

    // seed: all cyclic subgroups, then grow by adjoining prime-power elements
    std::set<std::vector<int>> found;
    std::deque<std::vector<int>> work;
    auto add = [&](std::vector<int> s) {
      if (found.insert(s).second) work.push_back(std::move(s));
    };
    add(close({identity_}));
    for (int e = 0; e < n; ++e) add(close({e}));
    while (!work.empty()) {
      std::vector<int> h = work.front();
      work.pop_front();
      for (int x : prime_power_elems) {
        if (std::binary_search(h.begin(), h.end(), x)) continue;
        std::vector<int> seed = h;
        seed.push_back(x);
        add(close(std::move(seed)));
      }
    }

    for (const auto& s : found) lat->subgroups.emplace_back(self, s);
    std::sort(lat->subgroups.begin(), lat->subgroups.end());
    for (std::size_t i = 0; i < lat->subgroups.size(); ++i)
      lat->id_by_elems.emplace(lat->subgroups[i].element_indices(), static_cast<int>(i));

    // conjugacy classes; reps are the canonically least members
    lat->class_of.assign(lat->subgroups.size(), -1);
    lat->conjugator.assign(lat->subgroups.size(), identity_);
    auto conj_set = [&](int g, const std::vector<int>& elems) {
      std::vector<int> out;
      out.reserve(elems.size());
      for (int h : elems) out.push_back(conj(g, h));
      std::sort(out.begin(), out.end());
      return out;
    };
    for (std::size_t i = 0; i < lat->subgroups.size(); ++i) {
      if (lat->class_of[i] >= 0) continue;
      int cls = static_cast<int>(lat->classes.representatives.size());
      lat->classes.representatives.push_back(lat->subgroups[i]);
      lat->rep_id.push_back(static_cast<int>(i));
      for (int g = 0; g < n; ++g) {
        std::vector<int> image = conj_set(g, lat->subgroups[i].element_indices());
        int id = lat->id_by_elems.at(image);
        if (lat->class_of[id] < 0) {
          lat->class_of[id] = cls;
          // g maps rep to image, so inv(g) maps image back to rep
          lat->conjugator[id] = inv(g);
          lat->classes.conjugator_index.emplace(image, std::make_pair(cls, inv(g)));
        }
      }
    }
    lattice_ = std::move(lat);
  });
  return *lattice_;
}

const std::vector<Subgroup>& PermGroup::all_subgroups() const { return lattice().subgroups; }
const SubgroupClassTable& PermGroup::subgroup_classes() const { return lattice().classes; }

int PermGroup::lattice_id(const Subgroup& h) const {
  if (h.parent().get() != this) throw DomainError("subgroup belongs to a different group");
  return lattice().id_by_elems.at(h.element_indices());
}

const Subgroup& PermGroup::lattice_subgroup(int id) const { return lattice().subgroups[id]; }

int PermGroup::conj_subgroup_id(int g, int id) const {
  const auto& elems = lattice().subgroups[id].element_indices();
  std::vector<int> out;
  out.reserve(elems.size());
  for (int h : elems) out.push_back(conj(g, h));
  std::sort(out.begin(), out.end());
  return lattice().id_by_elems.at(out);
}

int PermGroup::intersect_id(int a, int b) const {
  const auto& ea = lattice().subgroups[a].element_indices();
  const auto& eb = lattice().subgroups[b].element_indices();
  std::vector<int> out;
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
  return lattice().id_by_elems.at(out);
}

int PermGroup::class_of_id(int id) const { return lattice().class_of[id]; }
int PermGroup::conjugator_of_id(int id) const { return lattice().conjugator[id]; }
int PermGroup::class_rep_id(int cls) const { return lattice().rep_id[cls]; }

std::pair<int, int> SubgroupClassTable::locate(const Subgroup& h) const {
  auto it = conjugator_index.find(h.element_indices());
  if (it == conjugator_index.end())
    throw DomainError("subgroup not found in class table");
  return it->second;
}

Subgroup PermGroup::normalizer(const Subgroup& h) const {
  if (h.parent().get() != this) throw DomainError("subgroup belongs to a different group");
  const auto& elems = h.element_indices();
  std::vector<int> norm;
  for (int g = 0; g < static_cast<int>(order()); ++g) {
    bool ok = true;
    for (int x : elems)
      if (!std::binary_search(elems.begin(), elems.end(), conj(g, x))) {
        ok = false;
        break;
      }
    if (ok) norm.push_back(g);
  }
  return Subgroup(shared_from_this(), std::move(norm));
}

std::vector<int> PermGroup::coset_transversal(const Subgroup& big, const Subgroup& small) {
  if (!big.contains(small)) throw DomainError("transversal requires containment");
  const PermGroup& g = *big.parent();
  std::vector<bool> covered(g.order(), false);
  std::vector<int> reps;
  for (int e : big.element_indices()) {
    if (covered[e]) continue;
    reps.push_back(e);
    for (int s : small.element_indices()) covered[g.mul(e, s)] = true;  // coset e·S
  }
  return reps;
}

std::vector<int> PermGroup::weyl_transversal(const Subgroup& h) const {
  return coset_transversal(normalizer(h), h);
}

std::pair<Subgroup, std::vector<int>> PermGroup::normalizer_and_weyl(const Subgroup& h) const {
  Subgroup n = normalizer(h);
  return {n, coset_transversal(n, h)};
}

std::optional<Permutation> PermGroup::is_conjugate(const Subgroup& h1, const Subgroup& h2) const {
  if (h1.parent().get() != this || h2.parent().get() != this)
    throw DomainError("subgroup belongs to a different group");
  if (h1.order() != h2.order()) return std::nullopt;
  const auto& e1 = h1.element_indices();
  const auto& e2 = h2.element_indices();
  for (int g = 0; g < static_cast<int>(order()); ++g) {
    bool ok = true;
    for (int x : e1)
      if (!std::binary_search(e2.begin(), e2.end(), conj(g, x))) {
        ok = false;
        break;
      }
    if (ok) return elements_[g];
  }
  return std::nullopt;
}

DoubleCosetDecomposition PermGroup::double_cosets(const Subgroup& left, const Subgroup& right,
                                                  const Subgroup& ambient) const {
  if (!ambient.contains(left) || !ambient.contains(right))
    throw DomainError("double cosets require L, K <= H");
  DoubleCosetDecomposition dec;
  dec.left = left;
  dec.right = right;
  dec.ambient = ambient;

  std::vector<bool> covered(order(), false);
  for (int x : ambient.element_indices()) {
    if (covered[x]) continue;
    dec.reps.push_back(x);
    for (int l : left.element_indices())
      for (int k : right.element_indices()) covered[mul(mul(l, x), k)] = true;

    std::vector<int> li, ri;
    for (int l : left.element_indices())
      if (right.contains_index(conj(inv(x), l))) li.push_back(l);  // x^{-1} l x in K
    for (int k : right.element_indices())
      if (left.contains_index(conj(x, k))) ri.push_back(k);  // x k x^{-1} in L
    dec.left_intersections.emplace_back(shared_from_this(), std::move(li));
    dec.right_intersections.emplace_back(shared_from_this(), std::move(ri));
  }
  return dec;
}

// ---------------------------------------------------------------------------
// Builtins and JSON

namespace {

Permutation cycle_perm(int degree, const std::vector<int>& cycle) {
  std::vector<int> im(degree);
  for (int i = 0; i < degree; ++i) im[i] = i;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    im[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return Permutation(std::move(im));
}

PermGroupPtr make_q8() {
  // unit quaternions {±1, ±i, ±j, ±k} as 4-vectors; left-regular action
  using Quat = std::array<Int, 4>;
  std::vector<Quat> units;
  for (int axis = 0; axis < 4; ++axis)
    for (int sign : {1, -1}) {
      Quat q{0, 0, 0, 0};
      q[axis] = sign;
      units.push_back(q);
    }
  auto qmul = [](const Quat& a, const Quat& b) {
    return Quat{a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
  };
  auto index_of = [&](const Quat& q) {
    for (std::size_t i = 0; i < units.size(); ++i)
      if (units[i] == q) return static_cast<int>(i);
    throw ValidationError("quaternion unit lookup failed");
  };
  auto regular = [&](const Quat& g) {
    std::vector<int> im(8);
    for (int h = 0; h < 8; ++h) im[h] = index_of(qmul(g, units[h]));
    return Permutation(std::move(im));
  };
  Quat i{0, 1, 0, 0}, j{0, 0, 1, 0};
  return PermGroup::close_group(8, {regular(i), regular(j)});
}

}  // namespace

PermGroupPtr PermGroup::builtin(const std::string& name) {
  if (name == "S3") return close_group(3, {cycle_perm(3, {0, 1}), cycle_perm(3, {0, 1, 2})});
  if (name == "S4") return close_group(4, {cycle_perm(4, {0, 1}), cycle_perm(4, {0, 1, 2, 3})});
  if (name == "A4")
    return close_group(4, {cycle_perm(4, {0, 1, 2}),
                           cycle_perm(4, {0, 1}) * cycle_perm(4, {2, 3})});
  if (name == "Q8") return make_q8();
  if (name == "C2xC2") return close_group(4, {cycle_perm(4, {0, 1}), cycle_perm(4, {2, 3})});
  if (name.size() > 1 && name[0] == 'C') {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (...) {
      throw ValidationError("unknown builtin group: " + name);
    }
    if (n < 1 || n > kMaxDegree) throw SizeError("cyclic degree out of range");
    if (n == 1) return close_group(1, {});
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = i;
    return close_group(n, {cycle_perm(n, cyc)});
  }
  if (name.size() > 1 && name[0] == 'D') {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (...) {
      throw ValidationError("unknown builtin group: " + name);
    }
    if (n < 3 || n > kMaxDegree) throw SizeError("dihedral D<n> requires 3 <= n <= 32");
    std::vector<int> rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
      rot[i] = (i + 1) % n;
      refl[i] = (n - i) % n;
    }
    return close_group(n, {Permutation(std::move(rot)), Permutation(std::move(refl))});
  }
  throw ValidationError("unknown builtin group: " + name);
}

PermGroupPtr PermGroup::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad group JSON: ") + e.what());
  }
  if (j.is_string()) return builtin(j.get<std::string>());
  if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
    throw ValidationError("group JSON needs \"degree\" and \"generators\"");
  int degree = j.at("degree").get<int>();
  std::vector<Permutation> gens;
  for (const auto& g : j.at("generators")) gens.emplace_back(g.get<std::vector<int>>());
  return close_group(degree, std::move(gens));
}

PermGroupPtr PermGroup::parse_spec(const std::string& spec) {
  if (!spec.empty() && (spec.front() == '{' || spec.front() == '"'))
    return from_json(spec);
  return builtin(spec);
}

std::string PermGroup::to_json() const {
  json j;
  j["degree"] = degree_;
  json gens = json::array();
  for (const auto& g : generators_) gens.push_back(g.images());
  j["generators"] = std::move(gens);
  return j.dump();
}

}  // namespace equilab
