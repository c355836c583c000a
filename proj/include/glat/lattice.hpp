#pragma once

#include <optional>
#include <random>

#include "glat/abelian.hpp"
#include "glat/group.hpp"
#include "glat/normal_form.hpp"

namespace glat {

// Finite-rank free Z-module with a G-action by unimodular matrices. Matrices
// act on coordinate columns, rho(g h) = rho(g) rho(h). Element matrices are
// derived from the generator matrices through the group's word structure and
// memoized; values are cheap shared handles.
class GLattice {
 public:
  GLattice() = default;
  GLattice(FiniteGroup::Ptr g, std::vector<IMat> gen_matrices, Index rank, bool validate = false);

  static GLattice trivial(FiniteGroup::Ptr g, Index rank = 1);

  const FiniteGroup::Ptr& group() const { return grp_; }
  Index rank() const { return rank_; }
  const std::vector<IMat>& gen_matrices() const;

  const IMat& act(int element) const;
  IMat act_inv(int element) const { return act(grp_->inv(element)); }

  // Sum of rho(h) over a subgroup.
  IMat norm_matrix(const Subgroup& h) const;

  bool valid_action() const;  // full homomorphism + unimodularity check

 private:
  FiniteGroup::Ptr grp_;
  Index rank_ = 0;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// Equivariant homomorphism; equivariance is checked at construction.
struct LatticeMap {
  GLattice source, target;
  IMat matrix;  // target.rank x source.rank

  LatticeMap() = default;
  LatticeMap(GLattice src, GLattice tgt, IMat m);

  IMat apply(const IMat& columns) const { return mul<Int>(matrix, columns); }
};

LatticeMap compose(const LatticeMap& second, const LatticeMap& first);
LatticeMap dual_map(const LatticeMap& f);  // transpose, between dual lattices

struct ExactSequence {
  std::vector<GLattice> terms;
  std::vector<LatticeMap> maps;  // maps[i] : terms[i] -> terms[i+1]
};

struct SequenceDiagnostics {
  bool ok = true;
  std::string failure;  // empty when ok
};

// Full exactness with zero ends: first map injective, last surjective,
// kernel = image at every internal term.
SequenceDiagnostics verify_exactness(const ExactSequence& seq);
ExactSequence dual_sequence(const ExactSequence& seq);

// Constructions
GLattice permutation_lattice(const GSet& x);
ExactSequence augmentation_sequence(const GSet& x);                    // 0 -> I_X -> Z[X] -> Z -> 0
std::pair<GLattice, ExactSequence> chevalley_module(const GSet& x);    // J_X and 0 -> Z -> Z[X] -> J_X -> 0
GLattice dual(const GLattice& m);
GLattice tensor(const GLattice& m1, const GLattice& m2);               // same group
GLattice inflate(const GLattice& m, const JointGroup& j, size_t factor);
GLattice tensor_over(const JointGroup& j, const GLattice& m1, const GLattice& m2);
GLattice hom_lattice(const GLattice& m, const GLattice& n);            // = tensor(dual(m), n)
GLattice direct_sum(const GLattice& m1, const GLattice& m2);
std::pair<GLattice, std::vector<int>> restrict_to(const GLattice& m, const Subgroup& h);

// Saturated basis of the H-fixed sublattice.
IMat fixed_points(const GLattice& m, const Subgroup& h);
inline std::pair<Index, IMat> h0(const GLattice& m, const Subgroup& h) {
  IMat b = fixed_points(m, h);
  return {b.cols(), b};
}

// Hom(M,N) vectorisation: column-major over the matrix of the map, matching
// tensor(dual(M), N) with basis e_i* (x) f_j at index i*rank(N)+j.
IVec hom_to_vec(const IMat& u);
IMat vec_to_hom(const IVec& v, Index rank_n, Index rank_m);

// G-invariant sublattice in a given saturated basis; returns the lattice and
// the inclusion map.
std::pair<GLattice, LatticeMap> sublattice(const GLattice& ambient, const IMat& basis);
// Quotient by a primitive G-invariant image; returns the lattice and the
// projection map.
std::pair<GLattice, LatticeMap> quotient_lattice(const GLattice& ambient, const IMat& image_basis);

// Basis of the lattice of equivariant maps M -> N (kernel of the
// intertwining equations).
std::vector<IMat> equivariant_maps(const GLattice& m, const GLattice& n);
// Frobenius-style bases when one side is a permutation lattice.
std::vector<IMat> equivariant_maps_from_perm(const GSet& x, const GLattice& m);
std::vector<IMat> equivariant_maps_to_perm(const GLattice& m, const GSet& x);

// Search for a unimodular integer combination of the given maps.
struct UnimodularCombo {
  IMat matrix;
  std::vector<Int> coefficients;
};
std::optional<UnimodularCombo> find_unimodular_combo(const std::vector<IMat>& basis, int trials,
                                                     Int entry_bound, std::uint64_t seed);

bool is_permutation_action(const GLattice& m);

}  // namespace glat
