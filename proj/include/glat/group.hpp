#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "glat/perm.hpp"

namespace glat {

inline constexpr int kDefaultGroupBound = 512;

// Immutable finite permutation group with a fixed element ordering
// (lexicographic by image tuple, so the identity is element 0). Everything
// downstream keys matrices to this ordering, which makes runs reproducible.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  using Ptr = std::shared_ptr<const FiniteGroup>;

  // Closure of the generators; throws resource_error past `bound` elements.
  static Ptr generate(int degree, std::vector<Perm> gens, std::string id, int bound = kDefaultGroupBound);
  // Finalises an explicit element list (must already be a group).
  static Ptr from_elements(int degree, std::vector<Perm> elems, std::string id);

  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elems_.size()); }
  const std::string& id() const { return id_; }
  const std::vector<Perm>& elements() const { return elems_; }
  const Perm& element(int i) const { return elems_[i]; }
  const std::vector<int>& generator_indices() const { return gen_idx_; }

  int index_of(const Perm& p) const;
  int mul(int a, int b) const;  // index of element(a) composed after element(b)
  int inv(int a) const;
  int element_order(int a) const;

  // Word structure: element(i) = element(gen_of(i)) after element(parent_of(i))
  // for i != 0; used to extend generator matrices to the whole group.
  int parent_of(int i) const { return word_parent_[i]; }
  int gen_of(int i) const { return word_gen_[i]; }

 private:
  FiniteGroup() = default;
  void finalize();

  int degree_ = 0;
  std::string id_;
  std::vector<Perm> elems_;
  std::vector<int> gen_idx_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> inv_;
  std::vector<int> word_parent_, word_gen_;
  mutable std::once_flag mul_once_;
  mutable std::vector<int> mul_table_;
};

struct Subgroup {
  FiniteGroup::Ptr parent;
  std::vector<int> elements;    // sorted element indices, closed
  std::vector<int> generators;  // small generating set (element indices)

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int e) const;
  bool is_trivial() const { return elements.size() == 1; }
  bool is_full() const { return parent && order() == parent->order(); }
  bool is_normal() const;
  bool is_cyclic() const;
  Subgroup conjugate(int g) const;

  // Standalone group on the same points; mapping[i] = parent index of the
  // promoted group's element i.
  std::pair<FiniteGroup::Ptr, std::vector<int>> as_group() const;
};

Subgroup trivial_subgroup(const FiniteGroup::Ptr& g);
Subgroup full_subgroup(const FiniteGroup::Ptr& g);
Subgroup subgroup_from_elements(const FiniteGroup::Ptr& g, std::vector<int> elements);
Subgroup generated_subgroup(const FiniteGroup::Ptr& g, const std::vector<int>& gens);

FiniteGroup::Ptr group_from_generators(int degree, const std::vector<Perm>& gens, const std::string& id,
                                       int bound = kDefaultGroupBound);

// Every subgroup, as sorted element-index sets.
std::vector<Subgroup> all_subgroups(const FiniteGroup::Ptr& g, int bound = kDefaultGroupBound);
// One representative per conjugacy class, ordered by (order, element list).
std::vector<Subgroup> subgroups_up_to_conjugacy(const FiniteGroup::Ptr& g, int bound = kDefaultGroupBound);
std::vector<Subgroup> normal_subgroups(const FiniteGroup::Ptr& g, int bound = kDefaultGroupBound);
Subgroup sylow_subgroup(const FiniteGroup::Ptr& g, Int p);

bool is_prime(Int p);
std::vector<Int> prime_divisors(Int n);

// Finite G-set given by a full action table.
struct GSet {
  FiniteGroup::Ptr group;
  int size = 0;
  std::vector<std::vector<int>> act;  // act[element][point]
  std::vector<std::string> labels;

  int apply(int e, int x) const { return act[e][x]; }
  std::vector<std::vector<int>> orbits() const;
  std::vector<int> orbit_sizes() const;
  // orbit_of[x], base[orbit], rep[x] with element(rep[x]) sending base to x
  void orbit_data(std::vector<int>& orbit_of, std::vector<int>& base, std::vector<int>& rep) const;
  Subgroup stabilizer(int point) const;
  void validate() const;
};

GSet coset_gset(const FiniteGroup::Ptr& g, const Subgroup& h);
GSet one_point_gset(const FiniteGroup::Ptr& g);
GSet regular_gset(const FiniteGroup::Ptr& g);
GSet product_gset(const GSet& x, const GSet& y);         // same group, row-major points
GSet disjoint_union(const std::vector<GSet>& parts);     // same group

// Group with remembered surjections onto its factors.
struct JointGroup {
  FiniteGroup::Ptr group;
  std::vector<FiniteGroup::Ptr> factors;
  std::vector<std::vector<int>> proj;  // proj[f][e] = factor-f element index

  void validate_surjective() const;
};

JointGroup self_joint(const FiniteGroup::Ptr& g);
JointGroup direct_product(const FiniteGroup::Ptr& g1, const FiniteGroup::Ptr& g2);
JointGroup direct_product(const std::vector<FiniteGroup::Ptr>& gs);

// Pull a coset G_i-set back along proj[i].
GSet pullback_coset_gset(const JointGroup& j, size_t factor, const Subgroup& h);

// All subgroups of g1 x g2 with surjective projections, one per triple
// (N1, N2, quotient isomorphism).
std::vector<JointGroup> subdirect_products(const FiniteGroup::Ptr& g1, const FiniteGroup::Ptr& g2,
                                           int bound = kDefaultGroupBound);

}  // namespace glat
