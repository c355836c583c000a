#include "glat/group.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace glat {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FiniteGroup::Ptr FiniteGroup::generate(int degree, std::vector<Perm> gens, std::string id, int bound) {
  for (const auto& g : gens)
    if (g.degree() != degree) throw input_error("generator degree mismatch");
  std::set<Perm> seen;
  std::vector<Perm> frontier;
  seen.insert(Perm::identity(degree));
  frontier.push_back(Perm::identity(degree));
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& f : frontier)
      for (const auto& g : gens) {
        Perm h = g.after(f);
        if (seen.insert(h).second) {
          if (static_cast<int>(seen.size()) > bound) throw resource_error("group order exceeds bound " + std::to_string(bound));
          next.push_back(std::move(h));
        }
      }
    frontier = std::move(next);
  }
  auto grp = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  grp->degree_ = degree;
  grp->id_ = std::move(id);
  grp->elems_.assign(seen.begin(), seen.end());
  grp->finalize();
  return grp;
}

FiniteGroup::Ptr FiniteGroup::from_elements(int degree, std::vector<Perm> elems, std::string id) {
  std::set<Perm> seen(elems.begin(), elems.end());
  if (seen.size() != elems.size()) throw input_error("duplicate elements");
  if (!seen.count(Perm::identity(degree))) throw input_error("identity missing");
  for (const auto& a : elems) {
    if (a.degree() != degree) throw input_error("element degree mismatch");
    if (!seen.count(a.inverse())) throw input_error("element set not closed under inverse");
  }
  for (const auto& a : elems)
    for (const auto& b : elems)
      if (!seen.count(a.after(b))) throw input_error("element set not closed under composition");
  auto grp = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  grp->degree_ = degree;
  grp->id_ = std::move(id);
  grp->elems_.assign(seen.begin(), seen.end());
  grp->finalize();
  return grp;
}

void FiniteGroup::finalize() {
  std::sort(elems_.begin(), elems_.end());
  assert(elems_[0].is_identity());
  for (size_t i = 0; i < elems_.size(); ++i) index_[elems_[i].images()] = static_cast<int>(i);
  inv_.resize(elems_.size());
  for (size_t i = 0; i < elems_.size(); ++i) inv_[i] = index_.at(elems_[i].inverse().images());

  // greedy generating set
  gen_idx_.clear();
  std::vector<char> in(elems_.size(), 0);
  in[0] = 1;
  size_t covered = 1;
  auto close_over = [&](int g) {
    std::vector<int> frontier{g};
    if (!in[g]) {
      in[g] = 1;
      ++covered;
    }
    // regenerate the closure of everything marked so far
    std::vector<int> members;
    for (size_t i = 0; i < elems_.size(); ++i)
      if (in[i]) members.push_back(static_cast<int>(i));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur = members;
      for (int a : cur)
        for (int b : cur) {
          int c = index_.at(elems_[a].after(elems_[b]).images());
          if (!in[c]) {
            in[c] = 1;
            ++covered;
            members.push_back(c);
            grew = true;
          }
        }
    }
  };
  for (size_t i = 1; i < elems_.size() && covered < elems_.size(); ++i) {
    if (in[i]) continue;
    gen_idx_.push_back(static_cast<int>(i));
    close_over(static_cast<int>(i));
  }

  // BFS words over the generating set
  word_parent_.assign(elems_.size(), -1);
  word_gen_.assign(elems_.size(), -1);
  std::vector<int> frontier{0};
  word_parent_[0] = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (size_t k = 0; k < gen_idx_.size(); ++k) {
        int c = index_.at(elems_[gen_idx_[k]].after(elems_[a]).images());
        if (word_parent_[c] < 0) {
          word_parent_[c] = a;
          word_gen_[c] = static_cast<int>(k);
          next.push_back(c);
        }
      }
    frontier = std::move(next);
  }
  for (size_t i = 0; i < elems_.size(); ++i) assert(word_parent_[i] >= 0 && "generators do not reach all elements");
}

int FiniteGroup::index_of(const Perm& p) const {
  auto it = index_.find(p.images());
  if (it == index_.end()) throw input_error("permutation is not a group element");
  return it->second;
}

int FiniteGroup::mul(int a, int b) const {
  std::call_once(mul_once_, [this] {
    const int n = order();
    mul_table_.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mul_table_[static_cast<size_t>(i) * n + j] = index_.at(elems_[i].after(elems_[j]).images());
  });
  return mul_table_[static_cast<size_t>(a) * order() + b];
}

int FiniteGroup::inv(int a) const { return inv_[a]; }

int FiniteGroup::element_order(int a) const {
  int o = 1, x = a;
  while (x != 0) {
    x = mul(a, x);
    ++o;
  }
  return o;
}

bool Subgroup::contains(int e) const { return std::binary_search(elements.begin(), elements.end(), e); }

bool Subgroup::is_normal() const {
  for (int g = 0; g < parent->order(); ++g) {
    int gi = parent->inv(g);
    for (int h : elements)
      if (!contains(parent->mul(parent->mul(g, h), gi))) return false;
  }
  return true;
}

bool Subgroup::is_cyclic() const {
  for (int h : elements)
    if (parent->element_order(h) == order()) return true;
  return false;
}

Subgroup Subgroup::conjugate(int g) const {
  std::vector<int> conj;
  conj.reserve(elements.size());
  int gi = parent->inv(g);
  for (int h : elements) conj.push_back(parent->mul(parent->mul(g, h), gi));
  return subgroup_from_elements(parent, std::move(conj));
}

std::pair<FiniteGroup::Ptr, std::vector<int>> Subgroup::as_group() const {
  std::vector<Perm> perms;
  perms.reserve(elements.size());
  for (int e : elements) perms.push_back(parent->element(e));
  auto grp = FiniteGroup::from_elements(parent->degree(), perms, parent->id() + "|sub" + std::to_string(order()));
  std::vector<int> mapping(grp->order());
  for (int i = 0; i < grp->order(); ++i) mapping[i] = parent->index_of(grp->element(i));
  return {grp, mapping};
}

Subgroup trivial_subgroup(const FiniteGroup::Ptr& g) { return Subgroup{g, {0}, {}}; }

Subgroup full_subgroup(const FiniteGroup::Ptr& g) {
  std::vector<int> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  Subgroup s{g, std::move(all), {}};
  s.generators = subgroup_from_elements(g, s.elements).generators;
  return s;
}

Subgroup subgroup_from_elements(const FiniteGroup::Ptr& g, std::vector<int> elements) {
  elements = sorted_unique(std::move(elements));
  if (elements.empty() || elements[0] != 0) throw input_error("subgroup must contain the identity");
  Subgroup s{g, elements, {}};
  for (int a : elements) {
    if (!s.contains(g->inv(a))) throw input_error("subset not closed under inverse");
    for (int b : elements)
      if (!s.contains(g->mul(a, b))) throw input_error("subset not closed under composition");
  }
  // greedy generators
  std::vector<char> in(g->order(), 0);
  in[0] = 1;
  size_t covered = 1;
  for (int e : elements) {
    if (in[e]) continue;
    s.generators.push_back(e);
    std::vector<int> members;
    for (int x : elements)
      if (in[x]) members.push_back(x);
    members.push_back(e);
    in[e] = 1;
    ++covered;
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur = members;
      for (int a : cur)
        for (int b : cur) {
          int c = g->mul(a, b);
          if (!in[c]) {
            in[c] = 1;
            ++covered;
            members.push_back(c);
            grew = true;
          }
        }
    }
    if (covered == elements.size()) break;
  }
  return s;
}

Subgroup generated_subgroup(const FiniteGroup::Ptr& g, const std::vector<int>& gens) {
  std::set<int> seen{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (int s : gens) {
        int c = g->mul(s, a);
        if (seen.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return subgroup_from_elements(g, std::vector<int>(seen.begin(), seen.end()));
}

FiniteGroup::Ptr group_from_generators(int degree, const std::vector<Perm>& gens, const std::string& id, int bound) {
  return FiniteGroup::generate(degree, gens, id, bound);
}

std::vector<Subgroup> all_subgroups(const FiniteGroup::Ptr& g, int bound) {
  if (g->order() > bound) throw resource_error("subgroup enumeration bound exceeded");
  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> cyclics;
  known.insert({0});
  for (int e = 1; e < g->order(); ++e) {
    std::vector<int> pow{0};
    int x = e;
    while (x != 0) {
      pow.push_back(x);
      x = g->mul(e, x);
    }
    pow = sorted_unique(std::move(pow));
    if (known.insert(pow).second) cyclics.push_back(pow);
  }
  std::vector<std::vector<int>> frontier(known.begin(), known.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& a : frontier)
      for (const auto& c : cyclics) {
        if (std::includes(a.begin(), a.end(), c.begin(), c.end())) continue;
        std::vector<int> join = a;
        join.insert(join.end(), c.begin(), c.end());
        std::set<int> seen(join.begin(), join.end());
        bool grew = true;
        while (grew) {
          grew = false;
          std::vector<int> cur(seen.begin(), seen.end());
          for (int x : cur)
            for (int y : cur)
              if (seen.insert(g->mul(x, y)).second) grew = true;
        }
        std::vector<int> closed(seen.begin(), seen.end());
        if (known.insert(closed).second) next.push_back(std::move(closed));
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(known.size());
  for (const auto& v : known) out.push_back(subgroup_from_elements(g, v));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

std::vector<Subgroup> subgroups_up_to_conjugacy(const FiniteGroup::Ptr& g, int bound) {
  auto subs = all_subgroups(g, bound);
  std::set<std::vector<int>> canon_seen;
  std::vector<Subgroup> reps;
  for (const auto& s : subs) {
    std::vector<int> canon = s.elements;
    for (int x = 0; x < g->order(); ++x) {
      auto c = s.conjugate(x).elements;
      if (c < canon) canon = c;
    }
    if (canon_seen.insert(canon).second) reps.push_back(subgroup_from_elements(g, canon));
  }
  return reps;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup::Ptr& g, int bound) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(g, bound))
    if (s.is_normal()) out.push_back(std::move(s));
  return out;
}

bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> out;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

Subgroup sylow_subgroup(const FiniteGroup::Ptr& g, Int p) {
  if (!is_prime(p)) throw input_error("sylow_subgroup: p is not prime");
  int target = 1;
  int n = g->order();
  while (n % p == 0) {
    n = static_cast<int>(n / p);
    target = static_cast<int>(target * p);
  }
  Subgroup s = trivial_subgroup(g);
  auto is_p_power = [&](int m) {
    while (m % p == 0) m = static_cast<int>(m / p);
    return m == 1;
  };
  while (s.order() < target) {
    bool extended = false;
    for (int e = 1; e < g->order() && !extended; ++e) {
      if (s.contains(e) || !is_p_power(g->element_order(e))) continue;
      std::vector<int> gens = s.generators;
      gens.push_back(e);
      Subgroup cand = generated_subgroup(g, gens);
      if (is_p_power(cand.order())) {
        s = std::move(cand);
        extended = true;
      }
    }
    assert(extended && "sylow growth stalled");
  }
  return s;
}

void GSet::validate() const {
  if (static_cast<int>(act.size()) != group->order()) throw input_error("gset: action table size mismatch");
  for (int x = 0; x < size; ++x)
    if (act[0][x] != x) throw input_error("gset: identity does not fix points");
  for (int gi : group->generator_indices())
    for (int e = 0; e < group->order(); ++e) {
      int ge = group->mul(gi, e);
      for (int x = 0; x < size; ++x)
        if (act[ge][x] != act[gi][act[e][x]]) throw input_error("gset: action is not a homomorphism");
    }
}

std::vector<std::vector<int>> GSet::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(size, 0);
  for (int x = 0; x < size; ++x) {
    if (seen[x]) continue;
    std::vector<int> orb;
    std::vector<int> frontier{x};
    seen[x] = 1;
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int y : frontier) {
        orb.push_back(y);
        for (int e = 0; e < group->order(); ++e) {
          int z = act[e][y];
          if (!seen[z]) {
            seen[z] = 1;
            next.push_back(z);
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<int> GSet::orbit_sizes() const {
  std::vector<int> out;
  for (const auto& o : orbits()) out.push_back(static_cast<int>(o.size()));
  return out;
}

void GSet::orbit_data(std::vector<int>& orbit_of, std::vector<int>& base, std::vector<int>& rep) const {
  orbit_of.assign(size, -1);
  rep.assign(size, -1);
  base.clear();
  for (int x = 0; x < size; ++x) {
    if (orbit_of[x] >= 0) continue;
    int ob = static_cast<int>(base.size());
    base.push_back(x);
    orbit_of[x] = ob;
    rep[x] = 0;
    std::vector<int> frontier{x};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int y : frontier)
        for (int gi : group->generator_indices()) {
          int z = act[gi][y];
          if (orbit_of[z] < 0) {
            orbit_of[z] = ob;
            rep[z] = group->mul(gi, rep[y]);
            next.push_back(z);
          }
        }
      frontier = std::move(next);
    }
  }
}

Subgroup GSet::stabilizer(int point) const {
  std::vector<int> st;
  for (int e = 0; e < group->order(); ++e)
    if (act[e][point] == point) st.push_back(e);
  return subgroup_from_elements(group, std::move(st));
}

GSet coset_gset(const FiniteGroup::Ptr& g, const Subgroup& h) {
  if (h.parent != g) throw input_error("coset_gset: subgroup of a different group");
  const int n = g->order();
  std::vector<int> coset_id(n, -1);  // element -> min element of its coset
  std::vector<int> reps;
  for (int a = 0; a < n; ++a) {
    if (coset_id[a] >= 0) continue;
    int mn = a;
    std::vector<int> coset;
    for (int x : h.elements) coset.push_back(g->mul(a, x));
    for (int c : coset) mn = std::min(mn, c);
    for (int c : coset) coset_id[c] = mn;
    reps.push_back(mn);
  }
  std::sort(reps.begin(), reps.end());
  std::map<int, int> pt;
  for (size_t i = 0; i < reps.size(); ++i) pt[reps[i]] = static_cast<int>(i);
  GSet x;
  x.group = g;
  x.size = static_cast<int>(reps.size());
  x.act.assign(n, std::vector<int>(x.size));
  for (int e = 0; e < n; ++e)
    for (int i = 0; i < x.size; ++i) x.act[e][i] = pt.at(coset_id[g->mul(e, reps[i])]);
  for (int i = 0; i < x.size; ++i) x.labels.push_back("g" + std::to_string(reps[i]) + "H");
  return x;
}

GSet one_point_gset(const FiniteGroup::Ptr& g) { return coset_gset(g, full_subgroup(g)); }

GSet regular_gset(const FiniteGroup::Ptr& g) { return coset_gset(g, trivial_subgroup(g)); }

GSet product_gset(const GSet& x, const GSet& y) {
  if (x.group != y.group) throw input_error("product_gset: different groups");
  GSet p;
  p.group = x.group;
  p.size = x.size * y.size;
  p.act.assign(x.group->order(), std::vector<int>(p.size));
  for (int e = 0; e < x.group->order(); ++e)
    for (int a = 0; a < x.size; ++a)
      for (int b = 0; b < y.size; ++b) p.act[e][a * y.size + b] = x.act[e][a] * y.size + y.act[e][b];
  for (int a = 0; a < x.size; ++a)
    for (int b = 0; b < y.size; ++b) p.labels.push_back("(" + x.labels[a] + "," + y.labels[b] + ")");
  return p;
}

GSet disjoint_union(const std::vector<GSet>& parts) {
  if (parts.empty()) throw input_error("disjoint_union: no parts");
  GSet u;
  u.group = parts[0].group;
  u.size = 0;
  for (const auto& p : parts) {
    if (p.group != u.group) throw input_error("disjoint_union: different groups");
    u.size += p.size;
  }
  u.act.assign(u.group->order(), std::vector<int>(u.size));
  int off = 0;
  for (size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    for (int e = 0; e < u.group->order(); ++e)
      for (int x = 0; x < p.size; ++x) u.act[e][off + x] = off + p.act[e][x];
    for (int x = 0; x < p.size; ++x) u.labels.push_back(std::to_string(k) + ":" + p.labels[x]);
    off += p.size;
  }
  return u;
}

void JointGroup::validate_surjective() const {
  for (size_t f = 0; f < factors.size(); ++f) {
    std::set<int> img(proj[f].begin(), proj[f].end());
    if (static_cast<int>(img.size()) != factors[f]->order()) throw input_error("joint group projection not surjective");
  }
}

JointGroup self_joint(const FiniteGroup::Ptr& g) {
  JointGroup j;
  j.group = g;
  j.factors = {g};
  std::vector<int> idmap(g->order());
  std::iota(idmap.begin(), idmap.end(), 0);
  j.proj = {idmap};
  return j;
}

namespace {

Perm pair_perm(const Perm& a, const Perm& b) {
  std::vector<int> im(a.degree() + b.degree());
  for (int i = 0; i < a.degree(); ++i) im[i] = a(i);
  for (int i = 0; i < b.degree(); ++i) im[a.degree() + i] = a.degree() + b(i);
  return Perm(std::move(im));
}

JointGroup joint_from_pairs(const FiniteGroup::Ptr& g1, const FiniteGroup::Ptr& g2,
                            const std::vector<std::pair<int, int>>& pairs, const std::string& id) {
  std::vector<Perm> perms;
  perms.reserve(pairs.size());
  for (auto [a, b] : pairs) perms.push_back(pair_perm(g1->element(a), g2->element(b)));
  auto grp = FiniteGroup::from_elements(g1->degree() + g2->degree(), perms, id);
  JointGroup j;
  j.group = grp;
  j.factors = {g1, g2};
  j.proj.assign(2, std::vector<int>(grp->order()));
  for (int e = 0; e < grp->order(); ++e) {
    const Perm& p = grp->element(e);
    std::vector<int> im1(g1->degree()), im2(g2->degree());
    for (int i = 0; i < g1->degree(); ++i) im1[i] = p(i);
    for (int i = 0; i < g2->degree(); ++i) im2[i] = p(g1->degree() + i) - g1->degree();
    j.proj[0][e] = g1->index_of(Perm(std::move(im1)));
    j.proj[1][e] = g2->index_of(Perm(std::move(im2)));
  }
  j.validate_surjective();
  return j;
}

}  // namespace

JointGroup direct_product(const FiniteGroup::Ptr& g1, const FiniteGroup::Ptr& g2) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(g1->order()) * g2->order());
  for (int a = 0; a < g1->order(); ++a)
    for (int b = 0; b < g2->order(); ++b) pairs.emplace_back(a, b);
  return joint_from_pairs(g1, g2, pairs, g1->id() + "x" + g2->id());
}

JointGroup direct_product(const std::vector<FiniteGroup::Ptr>& gs) {
  if (gs.empty()) throw input_error("direct_product: empty factor list");
  JointGroup acc = self_joint(gs[0]);
  for (size_t k = 1; k < gs.size(); ++k) {
    JointGroup two = direct_product(acc.group, gs[k]);
    JointGroup next;
    next.group = two.group;
    for (size_t f = 0; f < acc.factors.size(); ++f) {
      next.factors.push_back(acc.factors[f]);
      std::vector<int> comp(two.group->order());
      for (int e = 0; e < two.group->order(); ++e) comp[e] = acc.proj[f][two.proj[0][e]];
      next.proj.push_back(std::move(comp));
    }
    next.factors.push_back(gs[k]);
    next.proj.push_back(two.proj[1]);
    acc = std::move(next);
  }
  acc.validate_surjective();
  return acc;
}

GSet pullback_coset_gset(const JointGroup& j, size_t factor, const Subgroup& h) {
  if (factor >= j.factors.size()) throw input_error("pullback: bad factor index");
  if (h.parent != j.factors[factor]) throw input_error("pullback: subgroup of a different factor");
  GSet x = coset_gset(j.factors[factor], h);
  GSet y;
  y.group = j.group;
  y.size = x.size;
  y.labels = x.labels;
  y.act.assign(j.group->order(), std::vector<int>(x.size));
  for (int e = 0; e < j.group->order(); ++e) y.act[e] = x.act[j.proj[factor][e]];
  return y;
}

namespace {

// Multiplication table of G/N on coset indices.
struct SmallTable {
  int n = 0;
  std::vector<int> mul;   // n*n
  std::vector<int> ord;   // element orders
  std::vector<int> gens;  // greedy generating set
  std::vector<int> word_parent, word_gen;
  int at(int a, int b) const { return mul[static_cast<size_t>(a) * n + b]; }
};

SmallTable quotient_table(const FiniteGroup::Ptr& g, const Subgroup& nrm, std::vector<int>& coset_of) {
  const int n = g->order();
  coset_of.assign(n, -1);
  std::vector<int> reps;
  for (int a = 0; a < n; ++a) {
    if (coset_of[a] >= 0) continue;
    int mn = a;
    std::vector<int> cs;
    for (int x : nrm.elements) cs.push_back(g->mul(a, x));
    for (int c : cs) mn = std::min(mn, c);
    for (int c : cs) coset_of[c] = mn;
    reps.push_back(mn);
  }
  std::sort(reps.begin(), reps.end());
  std::map<int, int> idx;
  for (size_t i = 0; i < reps.size(); ++i) idx[reps[i]] = static_cast<int>(i);
  for (int a = 0; a < n; ++a) coset_of[a] = idx.at(coset_of[a]);
  SmallTable t;
  t.n = static_cast<int>(reps.size());
  t.mul.resize(static_cast<size_t>(t.n) * t.n);
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j) t.mul[static_cast<size_t>(i) * t.n + j] = coset_of[g->mul(reps[i], reps[j])];
  t.ord.resize(t.n);
  for (int i = 0; i < t.n; ++i) {
    int o = 1, x = i;
    while (x != 0) {
      x = t.at(i, x);
      ++o;
    }
    t.ord[i] = o;
  }
  // greedy gens + BFS words
  std::vector<char> in(t.n, 0);
  in[0] = 1;
  int covered = 1;
  for (int e = 1; e < t.n && covered < t.n; ++e) {
    if (in[e]) continue;
    t.gens.push_back(e);
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < t.n; ++a) {
        if (!in[a]) continue;
        for (int b = 0; b < t.n; ++b) {
          if (!in[b]) continue;
          int c = t.at(a, b);
          if (!in[c]) {
            in[c] = 1;
            ++covered;
            grew = true;
          }
        }
      }
    }
    if (!in[e]) {
      in[e] = 1;
      ++covered;
    }
  }
  t.word_parent.assign(t.n, -1);
  t.word_gen.assign(t.n, -1);
  t.word_parent[0] = 0;
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (size_t k = 0; k < t.gens.size(); ++k) {
        int c = t.at(t.gens[k], a);
        if (t.word_parent[c] < 0) {
          t.word_parent[c] = a;
          t.word_gen[c] = static_cast<int>(k);
          next.push_back(c);
        }
      }
    frontier = std::move(next);
  }
  return t;
}

// All isomorphisms t1 -> t2, as index maps.
std::vector<std::vector<int>> enumerate_isomorphisms(const SmallTable& t1, const SmallTable& t2) {
  std::vector<std::vector<int>> out;
  if (t1.n != t2.n) return out;
  if (t1.n == 1) {
    out.push_back({0});
    return out;
  }
  const size_t k = t1.gens.size();
  std::vector<int> img(k, -1);
  std::vector<int> map(t1.n);
  auto build_and_check = [&]() {
    map[0] = 0;
    // order elements by BFS depth so parents are mapped before children
    std::vector<int> todo;
    for (int e = 1; e < t1.n; ++e) todo.push_back(e);
    bool progress = true;
    std::vector<char> done(t1.n, 0);
    done[0] = 1;
    while (progress) {
      progress = false;
      for (int e = 1; e < t1.n; ++e) {
        if (done[e] || !done[t1.word_parent[e]]) continue;
        map[e] = t2.at(img[t1.word_gen[e]], map[t1.word_parent[e]]);
        done[e] = 1;
        progress = true;
      }
    }
    std::vector<char> hit(t1.n, 0);
    for (int e = 0; e < t1.n; ++e) {
      if (hit[map[e]]) return false;
      hit[map[e]] = 1;
    }
    for (int a = 0; a < t1.n; ++a)
      for (int b = 0; b < t1.n; ++b)
        if (map[t1.at(a, b)] != t2.at(map[a], map[b])) return false;
    return true;
  };
  // backtrack over generator images (order-preserving candidates)
  std::vector<int> stackpos(k, 0);
  size_t depth = 0;
  std::vector<int> cand;
  for (int x = 0; x < t2.n; ++x) cand.push_back(x);
  std::vector<int> cursor(k, -1);
  while (true) {
    if (depth == k) {
      if (build_and_check()) out.push_back(map);
      --depth;
      continue;
    }
    bool found = false;
    for (int x = cursor[depth] + 1; x < t2.n; ++x) {
      if (t2.ord[x] != t1.ord[t1.gens[depth]]) continue;
      cursor[depth] = x;
      img[depth] = x;
      found = true;
      break;
    }
    if (found) {
      ++depth;
      if (depth < k) cursor[depth] = -1;
    } else {
      cursor[depth] = -1;
      if (depth == 0) break;
      --depth;
    }
  }
  return out;
}

}  // namespace

std::vector<JointGroup> subdirect_products(const FiniteGroup::Ptr& g1, const FiniteGroup::Ptr& g2, int bound) {
  if (static_cast<long long>(g1->order()) * g2->order() > static_cast<long long>(bound) * bound)
    throw resource_error("subdirect product bound exceeded");
  std::vector<JointGroup> out;
  auto n1s = normal_subgroups(g1, bound);
  auto n2s = normal_subgroups(g2, bound);
  int counter = 0;
  for (const auto& n1 : n1s) {
    std::vector<int> coset1;
    SmallTable q1 = quotient_table(g1, n1, coset1);
    for (const auto& n2 : n2s) {
      if (g1->order() / n1.order() != g2->order() / n2.order()) continue;
      std::vector<int> coset2;
      SmallTable q2 = quotient_table(g2, n2, coset2);
      for (const auto& iso : enumerate_isomorphisms(q1, q2)) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < g1->order(); ++a)
          for (int b = 0; b < g2->order(); ++b)
            if (iso[coset1[a]] == coset2[b]) pairs.emplace_back(a, b);
        out.push_back(joint_from_pairs(g1, g2, pairs,
                                       g1->id() + "x" + g2->id() + "#" + std::to_string(counter++)));
      }
    }
  }
  return out;
}

}  // namespace glat
