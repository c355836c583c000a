#pragma once

#include "glat/resolution.hpp"

namespace glat {

struct EtaleFactor {
  FiniteGroup::Ptr group;
  Subgroup subgroup;
  int multiplicity = 1;
};

// Product of coset G_i-sets pulled back along the projections of a joint
// group; the model of an etale algebra over the base field.
struct EtaleSpec {
  std::vector<EtaleFactor> factors;
  JointGroup joint;  // one projection per factor, in order
};

// Builds the joint group as the full direct product of the factor groups.
EtaleSpec make_etale_spec(std::vector<EtaleFactor> factors);
// Single factor over its own group.
EtaleSpec make_etale_spec(const FiniteGroup::Ptr& g, const Subgroup& h, int multiplicity = 1);

GSet etale_gset(const EtaleSpec& spec);

struct ClassifyOptions {
  CohomologyBounds cohomology;
  ResolutionOptions resolution;
  WitnessOptions witness;
  bool attempt_witness = true;
};

enum class Tri { yes, no, unknown };
const char* to_string(Tri t);

struct CrossCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct LatticeClassification {
  Int pord = 0;
  bool retract_rational = false;
  Tri stably_rational = Tri::unknown;
  StablyPermutationVerdict stable_witness;
  AbelianGroup sha2_omega;
  bool sha_two_routes = false;  // direct route ran and agreed
  Resolution flabby;
};

LatticeClassification classify_lattice(const GLattice& m, const ClassifyOptions& opt = {});

struct FixedPointReduction {
  GSet remaining;  // X minus the fixed orbit
  IMat matrix;     // unimodular equivariant J_X -> Z[remaining]
};

// When some orbit is a single point, J_X is permutation with an explicit
// witness.
std::optional<FixedPointReduction> fixed_point_reduction(const GSet& x);

struct ClassificationReport {
  GLattice lattice;  // J_X
  std::vector<int> orbit_sizes;
  LatticeClassification verdicts;
  std::optional<FixedPointReduction> reduction;
  std::vector<CrossCheck> cross_checks;
  bool all_cross_checks_pass() const;
};

ClassificationReport classify_norm_one(const EtaleSpec& spec, const ClassifyOptions& opt = {});

// Splitting of the product sequence: builds the four-term tensor sequence of
// the two augmentation sequences, identifies the image with the product
// augmentation ideal, and either certifies the direct-sum isomorphism
// J_{XxY} + (J_X (x) J_Y) = (J_X (x) Z[Y]) + (Z[X] (x) J_Y)  (coprime case)
// or certifies that the corresponding dual sequence does not split.
struct ProductSplittingReport {
  bool hypothesis_ok = false;  // orbit sizes pairwise coprime across the two sets
  std::vector<int> x_sizes, y_sizes;
  bool image_matches_product_ideal = false;
  std::optional<IMat> isomorphism;  // present iff hypothesis_ok
  Int collapsed_order = 0;          // 1 exactly when the dual sequence splits
};
ProductSplittingReport product_splitting_check(const GSet& x, const GSet& y);

// Rationality of the tensor product of two norm-one tori and of the norm-one
// torus of the tensor algebra; refuses when the degree hypothesis fails.
struct TensorRationalityReport {
  bool hypothesis_ok = false;
  ClassificationReport factor_a, factor_b;        // over their own groups
  LatticeClassification product;                  // J_{XxY} over the combined group
  LatticeClassification tensor_of_chevalleys;     // J_X (x) J_Y over the combined group
  bool class_identity_ok = false;                 // H^1 bookkeeping identity
  bool invertibility_identity_ok = false;
  bool conclusions_consistent = false;
  // what the splitting theorem yields from the factor verdicts alone
  Tri theorem_stable_conclusion = Tri::unknown;
  Tri theorem_retract_conclusion = Tri::unknown;
};
TensorRationalityReport tensor_rationality_check(const EtaleSpec& a, const EtaleSpec& b,
                                                 const ClassifyOptions& opt = {});

// Over a full direct product: the restriction isomorphism
// J_{XxY}|_{G1} = J_X + Z[X]^{n2-1} with an explicit matrix, and the
// converse implication on retract rationality.
struct ConverseReport {
  bool restriction_isomorphism_ok = false;
  IMat restriction_isomorphism;
  bool converse_holds = false;  // composite retract => factors retract, on computed verdicts
  bool factor_a_retract = false, factor_b_retract = false, composite_retract = false;
};
ConverseReport direct_product_converse_check(const EtaleSpec& a, const EtaleSpec& b,
                                             const ClassifyOptions& opt = {});

}  // namespace glat
