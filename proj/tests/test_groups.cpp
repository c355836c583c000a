#include <random>

#include "doctest.h"
#include "groups_common.hpp"
#include "oracles.hpp"

using namespace glat;
using namespace testutil;

TEST_CASE("group generation basics") {
  auto c2 = cyclic(2);
  CHECK(c2->order() == 2);
  auto s3 = sym3();
  CHECK(s3->order() == 6);
  auto v4 = klein4();
  CHECK(v4->order() == 4);
  for (int a = 0; a < v4->order(); ++a)
    for (int b = 0; b < v4->order(); ++b) CHECK(v4->mul(a, b) == v4->mul(b, a));
  for (int a = 1; a < v4->order(); ++a) CHECK(v4->element_order(a) == 2);
}

TEST_CASE("generation respects the resource bound") {
  std::vector<int> cycle(10);
  for (int i = 0; i < 10; ++i) cycle[i] = (i + 1) % 10;
  CHECK_THROWS_AS(FiniteGroup::generate(10, {Perm(cycle)}, "C10", 5), resource_error);
}

TEST_CASE("malformed permutations are rejected") {
  CHECK_THROWS_AS(Perm(std::vector<int>{0, 0, 1}), input_error);
  CHECK_THROWS_AS(Perm(std::vector<int>{0, 3}), input_error);
}

TEST_CASE("group law sanity on random triples") {
  std::mt19937_64 rng(7);
  for (auto g : {sym3(), quaternion8(), alt4()}) {
    std::uniform_int_distribution<int> d(0, g->order() - 1);
    for (int t = 0; t < 50; ++t) {
      int a = d(rng), b = d(rng), c = d(rng);
      CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
    }
    for (int a = 0; a < g->order(); ++a) {
      CHECK(g->mul(a, g->inv(a)) == 0);
      CHECK(g->mul(0, a) == a);
    }
  }
}

TEST_CASE("element ordering is deterministic") {
  auto s3a = FiniteGroup::generate(3, {perm_from_cycles(3, {{1, 2}}), perm_from_cycles(3, {{1, 2, 3}})}, "a");
  auto s3b = FiniteGroup::generate(3, {perm_from_cycles(3, {{1, 3}}), perm_from_cycles(3, {{1, 3, 2}})}, "b");
  REQUIRE(s3a->order() == s3b->order());
  for (int i = 0; i < s3a->order(); ++i) CHECK(s3a->element(i) == s3b->element(i));
}

TEST_CASE("subgroup classes match textbook counts") {
  CHECK(subgroups_up_to_conjugacy(sym3()).size() == 4);
  CHECK(subgroups_up_to_conjugacy(klein4()).size() == 5);
  CHECK(subgroups_up_to_conjugacy(alt4()).size() == 5);
  CHECK(subgroups_up_to_conjugacy(quaternion8()).size() == 6);
  CHECK(subgroups_up_to_conjugacy(c3c3()).size() == 6);
}

TEST_CASE("all subgroups agree with brute force and conjugates of representatives cover") {
  for (auto g : {sym3(), klein4(), alt4(), dihedral4(), cyclic(6), quaternion8()}) {
    auto subs = all_subgroups(g);
    auto brute = oracle::brute_force_subgroups(g);
    REQUIRE(subs.size() == brute.size());
    for (const auto& s : subs) CHECK(brute.count(s.elements) == 1);
    // conjugates of class representatives reach everything
    std::set<std::vector<int>> covered;
    for (const auto& rep : subgroups_up_to_conjugacy(g))
      for (int x = 0; x < g->order(); ++x) covered.insert(rep.conjugate(x).elements);
    CHECK(covered.size() == brute.size());
  }
}

TEST_CASE("sylow subgroups") {
  auto s3 = sym3();
  CHECK(sylow_subgroup(s3, 2).order() == 2);
  CHECK(sylow_subgroup(s3, 3).order() == 3);
  CHECK(sylow_subgroup(s3, 5).order() == 1);
  CHECK_THROWS_AS(sylow_subgroup(s3, 4), input_error);
  CHECK(sylow_subgroup(alt4(), 2).order() == 4);
  CHECK(sylow_subgroup(quaternion8(), 2).order() == 8);
  // maximality: the returned order is the full p-part
  auto a4 = alt4();
  auto syl3 = sylow_subgroup(a4, 3);
  CHECK(syl3.order() == 3);
  CHECK(12 % (syl3.order() * 4) == 0);
}

TEST_CASE("coset actions") {
  auto s3 = sym3();
  auto c2 = subgroups_up_to_conjugacy(s3)[1];
  REQUIRE(c2.order() == 2);
  GSet x = coset_gset(s3, c2);
  CHECK(x.size == 3);
  x.validate();
  CHECK(x.orbits().size() == 1);
  CHECK(one_point_gset(s3).size == 1);
  GSet reg = regular_gset(klein4());
  CHECK(reg.size == 4);
  CHECK(reg.stabilizer(0).order() == 1);
}

TEST_CASE("subdirect products") {
  auto c2 = cyclic(2);
  auto c3 = cyclic(3);
  auto list22 = subdirect_products(c2, c2);
  CHECK(list22.size() == 2);  // diagonal and full product
  std::set<int> orders;
  for (const auto& j : list22) {
    j.validate_surjective();
    orders.insert(j.group->order());
  }
  CHECK(orders == std::set<int>{2, 4});
  CHECK(subdirect_products(c2, c3).size() == 1);

  auto s3 = sym3();
  auto list33 = subdirect_products(s3, s3);
  // oracle: subgroups of S3 x S3 with both projections surjective
  auto dp = direct_product(s3, s3);
  int count = 0;
  for (const auto& h : all_subgroups(dp.group)) {
    std::set<int> p1, p2;
    for (int e : h.elements) {
      p1.insert(dp.proj[0][e]);
      p2.insert(dp.proj[1][e]);
    }
    if (static_cast<int>(p1.size()) == s3->order() && static_cast<int>(p2.size()) == s3->order()) ++count;
  }
  CHECK(static_cast<int>(list33.size()) == count);
  // distinct subgroups
  std::set<std::vector<std::vector<int>>> images;
  for (const auto& j : list33) {
    std::vector<std::vector<int>> im;
    for (int e = 0; e < j.group->order(); ++e) im.push_back(j.group->element(e).images());
    std::sort(im.begin(), im.end());
    images.insert(im);
  }
  CHECK(images.size() == list33.size());
}

TEST_CASE("subdirect products reconstruct from their kernel data") {
  auto s3 = sym3();
  auto c2 = cyclic(2);
  for (const auto& j : subdirect_products(s3, c2)) {
    // recover N1 = proj1(ker proj2), N2 = proj2(ker proj1) and rebuild
    std::set<int> n1set, n2set;
    for (int e = 0; e < j.group->order(); ++e) {
      if (j.proj[1][e] == 0) n1set.insert(j.proj[0][e]);
      if (j.proj[0][e] == 0) n2set.insert(j.proj[1][e]);
    }
    Subgroup n1 = subgroup_from_elements(s3, {n1set.begin(), n1set.end()});
    Subgroup n2 = subgroup_from_elements(c2, {n2set.begin(), n2set.end()});
    CHECK(n1.is_normal());
    CHECK(n2.is_normal());
    // membership is determined by the coset pairing the subgroup induces
    std::set<std::pair<int, int>> pairs;
    for (int e = 0; e < j.group->order(); ++e) pairs.insert({j.proj[0][e], j.proj[1][e]});
    std::map<int, std::set<int>> fibre;  // coset of N1 -> allowed second components
    for (auto [a, b] : pairs) fibre[a].insert(b);
    // every element of g1 appears with |N2| partners; partners form an N2-coset
    for (auto& [a, bs] : fibre) CHECK(static_cast<int>(bs.size()) == n2.order());
    CHECK(static_cast<int>(pairs.size()) == s3->order() * n2.order());
  }
}

TEST_CASE("pullbacks and disjoint unions") {
  auto c2 = cyclic(2);
  auto c3 = cyclic(3);
  auto j = direct_product(c2, c3);
  GSet a = pullback_coset_gset(j, 0, trivial_subgroup(c2));
  GSet b = pullback_coset_gset(j, 1, trivial_subgroup(c3));
  GSet u = disjoint_union({a, b});
  u.validate();
  auto sizes = u.orbit_sizes();
  REQUIRE(sizes.size() == 2);
  CHECK(sizes[0] == 2);
  CHECK(sizes[1] == 3);

  // three index-2 subgroups of C2xC2 give three size-2 orbits
  auto v4 = klein4();
  auto subs = subgroups_up_to_conjugacy(v4);
  std::vector<GSet> parts;
  for (const auto& s : subs)
    if (s.order() == 2) parts.push_back(coset_gset(v4, s));
  REQUIRE(parts.size() == 3);
  GSet w = disjoint_union(parts);
  CHECK(w.orbit_sizes() == std::vector<int>{2, 2, 2});
}
