#pragma once

#include "glat/extension.hpp"

namespace glat {

struct ResolutionOptions {
  int subgroup_bound = kDefaultGroupBound;
  bool minimize = true;
};

// Three-term sequence with a permutation middle term whose coset structure is
// kept explicit. For kind == coflabby the shape is 0 -> C -> P -> M -> 0 and
// the end certificates witness surjectivity of P^K -> M^K for every subgroup
// class K (equivalently, coflabbiness of the kernel). For kind == flabby the
// shape is 0 -> M -> P -> F -> 0 and the certificates are the vanishing Tate
// groups of F.
struct Resolution {
  enum class Kind { coflabby, flabby };
  Kind kind = Kind::coflabby;
  ExactSequence seq;
  GSet middle_gset;
  Int order = 0;
  IMat order_section, order_retraction;

  struct SubgroupEvidence {
    std::vector<int> subgroup;  // element indices of the class representative
    IMat solution;              // surjectivity witness (coflabby side)
    AbelianGroup tate;          // vanishing group (flabby side)
  };
  std::vector<SubgroupEvidence> evidence;

  const GLattice& kernel_term() const { return seq.terms[0]; }
  const GLattice& middle_term() const { return seq.terms[1]; }
  const GLattice& resolved() const { return kind == Kind::coflabby ? seq.terms[2] : seq.terms[0]; }
  const GLattice& flabby_class() const { return seq.terms[2]; }
};

Resolution coflabby_resolution(const GLattice& m, const ResolutionOptions& opt = {});
Resolution flabby_resolution(const GLattice& m, const ResolutionOptions& opt = {});

struct PermutationOrderResult {
  Int value = 0;
  IMat into_permutation;  // f : M -> P
  IMat back;              // g : P -> M with g*f = value * Id
  Resolution resolution;
};

PermutationOrderResult permutation_order_full(const GLattice& m, const ResolutionOptions& opt = {});
Int permutation_order(const GLattice& m, const ResolutionOptions& opt = {});
Int local_permutation_order(const GLattice& m, Int p, const ResolutionOptions& opt = {});

struct InvertibilityResult {
  bool invertible = false;
  Int pord = 0;
  // when invertible: P = embed(M) + complement, with embed = order_section
  IMat embedding;       // [section | kernel basis], unimodular into P
  Resolution resolution;
};

InvertibilityResult is_invertible(const GLattice& m, const ResolutionOptions& opt = {});
bool flabby_class_invertible(const GLattice& m, const ResolutionOptions& opt = {});

// Flabby resolution of a tensor product from flabby resolutions of the
// factors with coprime orders; also returns the verified direct-sum
// splitting of the flabby class.
struct TensorResolutionResult {
  Resolution resolution;        // of m1 (x) m2
  Int d1 = 0, d2 = 0;
  IMat class_splitting;         // F + (F1 (x) F2) = (F1 (x) P2) + (P1 (x) F2), unimodular
};
TensorResolutionResult tensor_flabby_resolutions(const GLattice& m1, const GLattice& m2,
                                                 const ResolutionOptions& opt = {});

struct WitnessOptions {
  int trials = 2000;
  Int entry_bound = 2;
  Index rank_cap = 40;
  std::uint64_t seed = 0;
  int subgroup_bound = kDefaultGroupBound;
};

struct StablyPermutationVerdict {
  enum class Kind { witness, disproof, unknown };
  Kind kind = Kind::unknown;
  std::vector<Int> coefficients;  // c_H per subgroup class, when the rank system is solvable
  IMat intertwiner;               // unimodular F + N -> P' (witness)
  IMat system;                    // fixed-rank system, kept for re-verification
  IMat rhs;
  std::string note;
};

// Tri-state test whether F is stably permutation: an integral certificate, a
// proof of impossibility from the fixed-point rank system, or unknown.
StablyPermutationVerdict stably_permutation_witness(const GLattice& f, const WitnessOptions& opt = {});

// Unimodular [iota | section] when the sequence splits (order 1).
std::optional<IMat> splitting_isomorphism(const ExactSequence& e);

// Direct coflabbiness check of the kernel term, for cross-validation.
bool verify_kernel_coflabby_direct(const Resolution& r, const CohomologyBounds& cb = {});

}  // namespace glat
