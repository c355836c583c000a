#pragma once

#include "glat/cohomology.hpp"
#include "glat/lattice.hpp"

namespace glat {

// Extension 0 -> A -> B_f -> C -> 0 presented by a normalized 1-cocycle
// g -> f(g) in Hom(C,A), with the middle term carrying the action
// g(a,c) = (g a + f(g)(g c), g c).
struct ExtensionClass {
  GLattice sub, quotient;      // A and C
  std::vector<IMat> cocycle;   // one matrix per group element, f(identity) = 0
  GLattice middle;
  ExactSequence seq;
};

bool cocycle_condition_holds(const GLattice& a, const GLattice& c, const std::vector<IMat>& f);

// Extend generator values to the whole group along the cocycle rule.
std::vector<IMat> cocycle_from_generator_values(const GLattice& a, const GLattice& c,
                                                const std::vector<IMat>& gen_values);

ExtensionClass extension_from_cocycle(const GLattice& a, const GLattice& c, const std::vector<IMat>& f);

// Z-linear section with pi * s = Id, chosen deterministically.
IMat canonical_section(const ExactSequence& e);

// f_s(g) = g s g^{-1} - s, lowered to A-coordinates. Requires pi * s
// equivariant.
std::vector<IMat> cocycle_from_section(const ExactSequence& e, const IMat& s);

IVec cocycle_to_vector(const BarComplex& bar, const std::vector<IMat>& f);
std::vector<IMat> vector_to_cocycle(const BarComplex& bar, const IVec& v, Index rank_a, Index rank_c);

struct ExtensionOrder {
  Int order = 0;
  IMat section;     // equivariant, pi * section = order * Id
  IMat retraction;  // equivariant, retraction * iota = order * Id
};

// The order of the class of a short exact sequence, with both certificates
// produced and machine-checked. Uses the cohomology-class route when the
// Hom-lattice is small, otherwise the equivariant-section route through a
// permutation middle term.
ExtensionOrder extension_order(const ExactSequence& e, bool verify = true);

// Independent order computations, primarily for cross-checks.
Int order_via_class(const ExactSequence& e);
Int order_via_section(const ExactSequence& e);
Int order_via_retraction(const ExactSequence& e);

// Equivariant s with pi * s = m * Id, or nullopt precisely when ord does not
// divide m.
std::optional<IMat> section_of_multiple(const ExactSequence& e, Int m);
std::optional<IMat> retraction_of_multiple(const ExactSequence& e, Int m);

// v*e2 - u*e1 = 1 with |u| minimal (then u >= 0 on ties).
std::pair<Int, Int> bezout_pair(Int e1, Int e2);

// Equivalence of two extensions of C by A: an equivariant middle-term map
// commuting with both edges (such a map is automatically an isomorphism).
std::optional<IMat> equivalent_extensions(const ExactSequence& e1, const ExactSequence& e2);

struct TensorSplitData {
  Int u = 0, v = 0;
  IMat section;                // splits the right-hand three-term sequence
  ExactSequence three_term;    // middle-collapsed sequence
  IMat multiple_certificate;   // composes with the edge map to e1*e2 * Id
  Int order = 0;               // exact order of three_term
};

struct TensorExtensionResult {
  ExactSequence four_term;
  Int e1 = 0, e2 = 0;
  std::optional<TensorSplitData> split;  // present iff gcd(e1,e2) = 1
};

// 0 -> A1(x)A2 -> B1(x)B2 -> (C1(x)B2)+(B1(x)C2) -> C1(x)C2 -> 0, with the
// Bezout splitting of the right edge when the orders are coprime.
TensorExtensionResult tensor_extensions_e1(const ExactSequence& e1, const ExactSequence& e2);
// Dual shape: 0 -> A1(x)A2 -> (A1(x)B2)+(B1(x)A2) -> B1(x)B2 -> C1(x)C2 -> 0.
TensorExtensionResult tensor_extensions_e2(const ExactSequence& e1, const ExactSequence& e2);

struct KlyachkoResult {
  ExactSequence seq;  // 0 -> I_{X1}(x)...(x)I_{Xr} -> P+ -> P- -> 0
  std::vector<int> sizes;
  Int order = 0;          // exact order, divides the size product
  Int size_product = 1;
  bool flabby_class_of_tensor_trivial = true;  // witnessed by the sequence itself
};

KlyachkoResult klyachko_sequence(const std::vector<GSet>& xs);

}  // namespace glat
