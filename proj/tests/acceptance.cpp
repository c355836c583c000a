// Acceptance suite: one checked criterion per section, one line of output
// each, exact arithmetic throughout. Exit code is the number of failures.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "glat/io.hpp"
#include "groups_common.hpp"

using namespace glat;
using namespace testutil;

namespace {

struct Check {
  int id;
  std::string name;
  std::function<void()> run;  // throws on failure
};

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

FiniteGroup::Ptr c4c2() {
  return FiniteGroup::generate(6, {perm_from_cycles(6, {{1, 2, 3, 4}}), perm_from_cycles(6, {{5, 6}})}, "C4xC2");
}

Subgroup subgroup_of_order(const FiniteGroup::Ptr& g, int n) {
  for (const auto& s : subgroups_up_to_conjugacy(g))
    if (s.order() == n) return s;
  throw std::runtime_error("no subgroup of requested order");
}

std::vector<Subgroup> subgroups_of_index(const FiniteGroup::Ptr& g, int index) {
  std::vector<Subgroup> out;
  for (const auto& s : all_subgroups(g))
    if (g->order() / s.order() == index) out.push_back(s);
  return out;
}

GLattice chev(const GSet& x) { return chevalley_module(x).first; }

// --- criterion 1: permutation order of transitive chevalley modules ---
void criterion1() {
  struct Case {
    FiniteGroup::Ptr g;
    Subgroup h;
    Int index;
  };
  std::vector<Case> cases;
  for (auto g : {cyclic(2), cyclic(3), cyclic(4)}) cases.push_back({g, trivial_subgroup(g), g->order()});
  {
    auto s3 = sym3();
    cases.push_back({s3, subgroup_of_order(s3, 2), 3});
    cases.push_back({s3, trivial_subgroup(s3), 6});
  }
  {
    auto a4 = alt4();
    cases.push_back({a4, subgroup_of_order(a4, 3), 4});
  }
  {
    auto v4 = klein4();
    cases.push_back({v4, trivial_subgroup(v4), 4});
  }
  for (const auto& cs : cases) {
    GLattice j = chev(coset_gset(cs.g, cs.h));
    Int p = permutation_order(j);
    std::ostringstream os;
    os << cs.g->id() << " index " << cs.index << ": pord " << p;
    require(p == cs.index, os.str());
  }
}

// --- criterion 2: multi-orbit gcd law with explicit splitting ---
void criterion2() {
  auto c6 = cyclic(6);
  GSet x23 = disjoint_union({coset_gset(c6, subgroup_of_order(c6, 3)), coset_gset(c6, subgroup_of_order(c6, 2))});
  auto [j23, f23] = chevalley_module(x23);
  require(permutation_order(j23) == 1, "orbit sizes {2,3}: pord must be 1");
  auto iso = splitting_isomorphism(f23);
  require(iso.has_value() && is_unimodular(*iso), "orbit sizes {2,3}: Z + J_X = Z[X] splitting");

  auto g = c4c2();
  GSet x24 = disjoint_union({coset_gset(g, subgroup_of_order(g, 4)), coset_gset(g, subgroup_of_order(g, 2))});
  auto sizes = x24.orbit_sizes();
  std::sort(sizes.begin(), sizes.end());
  require(sizes == std::vector<int>{2, 4}, "orbit sizes {2,4} expected");
  require(permutation_order(chev(x24)) == 2, "orbit sizes {2,4}: pord must be 2");
}

// --- criterion 3: obstruction groups by two routes ---
void criterion3() {
  auto check = [](const FiniteGroup::Ptr& g, int index, int count, const AbelianGroup& expect) {
    auto subs = subgroups_of_index(g, index);
    require(static_cast<int>(subs.size()) >= count, "not enough subgroups of the requested index");
    std::vector<GSet> parts;
    for (int i = 0; i < count; ++i) parts.push_back(coset_gset(g, subs[static_cast<size_t>(i)]));
    GLattice j = chev(disjoint_union(parts));
    Resolution fl = flabby_resolution(j);
    AbelianGroup via_class = h1(fl.flabby_class(), full_subgroup(g));
    AbelianGroup direct = sha2_omega_direct(j);
    std::ostringstream os;
    os << g->id() << " with " << count << " factors: flabby-class route " << via_class.to_string()
       << ", direct route " << direct.to_string() << ", expected " << expect.to_string();
    require(via_class == direct, "two routes disagree: " + os.str());
    require(via_class == expect, os.str());
  };
  auto v4 = klein4();
  check(v4, 2, 3, AbelianGroup{{2}, 0});
  auto g9 = c3c3();
  check(g9, 3, 2, AbelianGroup{});
  check(g9, 3, 3, AbelianGroup{{3}, 0});
  check(g9, 3, 4, AbelianGroup{{3, 3}, 0});
}

// --- criterion 4: retract rationality vs sylow cyclicity in the galois case ---
void criterion4() {
  std::vector<FiniteGroup::Ptr> groups = {cyclic(2), cyclic(3),  cyclic(4), cyclic(6),
                                          klein4(),  c3c3(),     sym3(),    quaternion8()};
  for (const auto& g : groups) {
    bool all_cyclic = true;
    for (Int p : prime_divisors(g->order()))
      if (!sylow_subgroup(g, p).is_cyclic()) all_cyclic = false;
    bool inv = flabby_class_invertible(chev(regular_gset(g)));
    std::ostringstream os;
    os << g->id() << ": flabby class invertible " << inv << ", sylow subgroups all cyclic " << all_cyclic;
    require(inv == all_cyclic, os.str());
  }
}

// --- criterion 5: counterexample reproduction ---
void criterion5() {
  auto g9 = c3c3();
  auto subs = subgroups_of_index(g9, 3);
  require(subs.size() >= 2, "need two distinct index-3 subgroups");
  GSet x = coset_gset(g9, subs[0]);
  GSet y = coset_gset(g9, subs[1]);
  GLattice t = tensor(chev(x), chev(y));
  require(!flabby_class_invertible(t), "tensor of cubic chevalley modules over C3xC3 must not be retract rational");
  auto v4 = klein4();
  require(!flabby_class_invertible(chev(regular_gset(v4))), "biquadratic chevalley module must not be retract rational");
}

// --- criterion 6: product splitting isomorphism and the nonsplit case ---
void criterion6() {
  auto c6 = cyclic(6);
  GSet x = coset_gset(c6, subgroup_of_order(c6, 3));
  GSet y = coset_gset(c6, subgroup_of_order(c6, 2));
  ProductSplittingReport rep = product_splitting_check(x, y);
  require(rep.hypothesis_ok && rep.isomorphism.has_value(), "coprime case must produce the isomorphism");
  require(is_unimodular(*rep.isomorphism), "splitting isomorphism must be unimodular");

  auto v4 = klein4();
  auto idx2 = subgroups_of_index(v4, 2);
  ProductSplittingReport bad = product_splitting_check(coset_gset(v4, idx2[0]), coset_gset(v4, idx2[1]));
  require(!bad.hypothesis_ok, "size-2 x size-2 case must refuse");
  require(bad.collapsed_order != 1, "size-2 x size-2 sequence must be certified nonsplit");
}

// --- criterion 7: iterated tensor sequences ---
void criterion7() {
  auto c6 = cyclic(6);
  KlyachkoResult k2 = klyachko_sequence({coset_gset(c6, subgroup_of_order(c6, 3)),
                                         coset_gset(c6, subgroup_of_order(c6, 2))});
  require(verify_exactness(k2.seq).ok, "two-set sequence exact");
  require(k2.seq.terms[1].rank() - k2.seq.terms[2].rank() == 1 * 2, "rank identity for sizes (2,3)");
  require(6 % k2.order == 0, "order divides 6");

  auto c30 = cyclic(30);
  KlyachkoResult k3 = klyachko_sequence({coset_gset(c30, subgroup_of_order(c30, 15)),
                                         coset_gset(c30, subgroup_of_order(c30, 10)),
                                         coset_gset(c30, subgroup_of_order(c30, 6))});
  require(verify_exactness(k3.seq).ok, "three-set sequence exact");
  require(k3.seq.terms[1].rank() - k3.seq.terms[2].rank() == 1 * 2 * 4, "rank identity for sizes (2,3,5)");
  require(30 % k3.order == 0, "order divides 30");
}

// --- criterion 8: order trichotomy on randomized small extensions ---
void criterion8() {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<Int> small(-2, 2);
  std::vector<FiniteGroup::Ptr> pool = {cyclic(2), cyclic(3), cyclic(4), cyclic(6), klein4(), sym3(), alt4(), dihedral4()};
  int done = 0;
  size_t which = 0;
  while (done < 50) {
    auto g = pool[which++ % pool.size()];
    // random small coefficient lattices
    auto classes = subgroups_up_to_conjugacy(g);
    std::uniform_int_distribution<size_t> pick(0, classes.size() - 1);
    GSet xa = coset_gset(g, classes[pick(rng)]);
    GLattice a = augmentation_sequence(xa).terms[0];
    if (a.rank() == 0 || a.rank() > 3) a = GLattice::trivial(g, 1);
    GSet xc = coset_gset(g, classes[pick(rng)]);
    GLattice c = chev(xc);
    if (c.rank() == 0 || c.rank() > 3) c = GLattice::trivial(g, 2);
    GLattice hom = hom_lattice(c, a);
    BarComplex bar(hom, full_subgroup(g));
    IMat z1 = bar.z1();
    IVec combo = IVec::Zero(z1.rows());
    for (Index col = 0; col < z1.cols(); ++col) combo += small(rng) * z1.col(col);
    auto f = vector_to_cocycle(bar, combo, a.rank(), c.rank());
    ExtensionClass ext = extension_from_cocycle(a, c, f);
    require(ext.middle.rank() <= 6, "extension middle rank within bounds");
    Int o1 = order_via_class(ext.seq);
    Int o2 = order_via_section(ext.seq);
    Int o3 = order_via_retraction(ext.seq);
    std::ostringstream os;
    os << "routes diverge over " << g->id() << ": " << o1 << "/" << o2 << "/" << o3;
    require(o1 == o2 && o2 == o3, os.str());
    require(g->order() % o1 == 0, "order must divide the group order");
    ++done;
  }
}

// --- criterion 9: invariant suite on randomized instances ---
void criterion9() {
  std::mt19937_64 rng(907);
  std::vector<FiniteGroup::Ptr> pool = {cyclic(2), cyclic(3), cyclic(4), cyclic(6), klein4(), sym3(), dihedral4()};
  auto random_module = [&](const FiniteGroup::Ptr& g) {
    auto classes = subgroups_up_to_conjugacy(g);
    std::uniform_int_distribution<size_t> pick(0, classes.size() - 1);
    std::uniform_int_distribution<int> kind(0, 3);
    GSet x = coset_gset(g, classes[pick(rng)]);
    switch (kind(rng)) {
      case 0:
        return permutation_lattice(x);
      case 1:
        return augmentation_sequence(x).terms[0];
      case 2:
        return chev(x);
      default:
        return dual(augmentation_sequence(x).terms[0]);
    }
  };
  std::uniform_int_distribution<size_t> pg(0, pool.size() - 1);
  for (int t = 0; t < 20; ++t) {
    auto g = pool[pg(rng)];
    GLattice m = random_module(g);
    // duality
    require(permutation_order(m) == permutation_order(dual(m)), "pord duality");
    // sylow product
    Int product = 1;
    for (Int p : prime_divisors(g->order())) product *= local_permutation_order(m, p);
    require(permutation_order(m) == product, "sylow product formula");
    // tensor divisibility
    GLattice n = random_module(g);
    if (m.rank() * n.rank() <= 12) {
      Int dm = permutation_order(m), dn = permutation_order(n);
      Int dt = permutation_order(tensor(m, n));
      require((dm * dn) % dt == 0, "tensor order divides the product of orders");
    }
    // shapiro
    auto classes = subgroups_up_to_conjugacy(g);
    std::uniform_int_distribution<size_t> pick(0, classes.size() - 1);
    require(h1(permutation_lattice(coset_gset(g, classes[pick(rng)])), full_subgroup(g)).trivial(),
            "shapiro vanishing");
    // closures
    GSet px = coset_gset(g, classes[pick(rng)]);
    GLattice perm = permutation_lattice(px);
    require(is_permutation_action(tensor(perm, permutation_lattice(coset_gset(g, classes[pick(rng)])))),
            "permutation x permutation is permutation");
    Resolution fl = flabby_resolution(m);
    if (fl.flabby_class().rank() * perm.rank() <= 24) {
      require(is_flabby(tensor(fl.flabby_class(), perm)), "flabby x permutation is flabby");
      if (is_invertible(fl.flabby_class()).invertible)
        require(is_invertible(tensor(fl.flabby_class(), perm)).invertible,
                "invertible x permutation is invertible");
    }
  }
}

// --- criterion 10: stable permutation witnesses at tiny rank ---
void criterion10() {
  WitnessOptions wo;  // fixed default seed
  struct Case {
    FiniteGroup::Ptr g;
    Subgroup h;
    std::string name;
  };
  std::vector<Case> cases;
  {
    auto c2 = cyclic(2);
    cases.push_back({c2, trivial_subgroup(c2), "quadratic"});
    auto c3 = cyclic(3);
    cases.push_back({c3, trivial_subgroup(c3), "cyclic cubic"});
    auto s3 = sym3();
    cases.push_back({s3, subgroup_of_order(s3, 2), "generic cubic"});
  }
  for (const auto& cs : cases) {
    GLattice j = chev(coset_gset(cs.g, cs.h));
    Resolution fl = flabby_resolution(j);
    StablyPermutationVerdict v = stably_permutation_witness(fl.flabby_class(), wo);
    require(v.kind == StablyPermutationVerdict::Kind::witness, cs.name + ": witness expected, got " + v.note);
    require(is_unimodular(v.intertwiner) || fl.flabby_class().rank() == 0, cs.name + ": witness must be unimodular");
  }
}

}  // namespace

int main() {
  std::vector<Check> checks = {
      {1, "permutation order of transitive chevalley modules", criterion1},
      {2, "multi-orbit gcd law with explicit splitting", criterion2},
      {3, "norm-principle obstruction groups by two routes", criterion3},
      {4, "retract rationality matches sylow cyclicity (galois case)", criterion4},
      {5, "non-retract-rational counterexamples", criterion5},
      {6, "product splitting isomorphism / certified nonsplit", criterion6},
      {7, "iterated coprime tensor sequences", criterion7},
      {8, "extension order trichotomy on 50 random extensions", criterion8},
      {9, "invariant suite on randomized instances", criterion9},
      {10, "stable permutation witnesses at tiny rank", criterion10},
  };
  int failures = 0;
  for (const auto& c : checks) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run();
      auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("[PASS] criterion %2d: %s (%.2fs)\n", c.id, c.name.c_str(), dt);
    } catch (const std::exception& e) {
      auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("[FAIL] criterion %2d: %s (%.2fs)\n        %s\n", c.id, c.name.c_str(), dt, e.what());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", checks.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
