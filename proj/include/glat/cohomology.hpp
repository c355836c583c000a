#pragma once

#include "glat/lattice.hpp"

namespace glat {

struct CohomologyBounds {
  int h1_group = 512;
  int h2_group = 24;
};

// Normalized bar-resolution cochain complex of a subgroup acting on a
// lattice. Cochains in degree k are maps on k-tuples of non-identity
// elements; the coordinate layout is tuple-major, lattice-coordinate-minor.
class BarComplex {
 public:
  BarComplex(GLattice m, const Subgroup& h);

  Index rank() const { return r_; }
  int n() const { return static_cast<int>(elems_.size()); }  // |H|
  Index dim(int degree) const;

  IMat d0() const;
  IMat d1() const;
  void d1_row(Index row, SparseRow& out) const;
  void d2_row(Index row, SparseRow& out) const;

  IMat z1() const { return kernel_rows(dim(2), dim(1), [this](Index r, SparseRow& o) { d1_row(r, o); }); }
  IMat z2() const { return kernel_rows(dim(3), dim(2), [this](Index r, SparseRow& o) { d2_row(r, o); }); }

  // position of a non-identity element / pair inside a cochain vector
  Index pos1(int a) const { return pos_.at(a); }
  Index pair_block(int a, int b) const { return (pos1(a) * (n() - 1) + pos1(b)) * r_; }

  const std::vector<int>& elements() const { return elems_; }
  const GLattice& module() const { return m_; }

 private:
  GLattice m_;
  std::vector<int> elems_;  // parent element indices, identity first
  std::map<int, Index> pos_;
  Index r_ = 0;
  int mul(int a, int b) const { return m_.group()->mul(a, b); }
};

AbelianGroup h1(const GLattice& m, const Subgroup& h, const CohomologyBounds& bounds = {});
AbelianGroup h2(const GLattice& m, const Subgroup& h, const CohomologyBounds& bounds = {});
AbelianGroup tate_h_minus1(const GLattice& m, const Subgroup& h);

// ker(N)/im(g-1) for cyclic H; equals h1 there (used as a second route).
AbelianGroup h1_cyclic_direct(const GLattice& m, const Subgroup& h);

bool is_flabby(const GLattice& m, int bound = kDefaultGroupBound);
bool is_coflabby(const GLattice& m, int bound = kDefaultGroupBound, const CohomologyBounds& cb = {});

// Kernel of H^2(G,M) -> product of H^2 over cyclic subgroups (one conjugacy
// class representative each).
AbelianGroup sha2_omega_direct(const GLattice& m, const CohomologyBounds& bounds = {});

// Order of the class [f] in H^1: the least e > 0 with e*f a coboundary.
// f is a cochain vector of dimension dim C^1.
Int cocycle_class_order(const BarComplex& bar, const IVec& f);

// Restriction of a 1-cochain over G to a subgroup.
IVec restrict_cocycle(const BarComplex& over_g, const BarComplex& over_h, const IVec& f);
// Transfer of a 1-cocycle over H up to G (left coset representatives).
IVec corestrict_cocycle(const BarComplex& over_h, const BarComplex& over_g, const IVec& f);

// Coordinates of [f] in H^1 presented as Z^k / relations, for order checks.
struct H1Presentation {
  IMat z1;          // kernel basis
  IMat boundaries;  // d0 image generators, expressed in ambient coordinates
  AbelianGroup structure;
};
H1Presentation h1_presentation(const BarComplex& bar);

}  // namespace glat
