#include "glat/cohomology.hpp"

#include <algorithm>
#include <cassert>

namespace glat {

namespace {

// merge duplicate column indices
void push_merged(SparseRow& out, Index col, Int val) {
  for (auto& [c, v] : out)
    if (c == col) {
      v = num::checked_add(v, val);
      return;
    }
  out.emplace_back(col, val);
}

void compact(SparseRow& out) {
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }), out.end());
}

}  // namespace

BarComplex::BarComplex(GLattice m, const Subgroup& h) : m_(std::move(m)) {
  if (h.parent != m_.group()) throw input_error("bar complex: subgroup of a different group");
  elems_ = h.elements;  // sorted, identity first
  r_ = m_.rank();
  for (size_t i = 1; i < elems_.size(); ++i) pos_[elems_[i]] = static_cast<Index>(i - 1);
}

Index BarComplex::dim(int degree) const {
  Index d = r_;
  for (int k = 0; k < degree; ++k) d *= n() - 1;
  return d;
}

IMat BarComplex::d0() const {
  IMat d = IMat::Zero(dim(1), r_);
  for (int i = 1; i < n(); ++i)
    d.middleRows(static_cast<Index>(i - 1) * r_, r_) = m_.act(elems_[i]) - IMat::Identity(r_, r_);
  return d;
}

void BarComplex::d1_row(Index row, SparseRow& out) const {
  const Index nn = n() - 1;
  Index i = row % r_;
  Index pair = row / r_;
  Index pb = pair % nn, pa = pair / nn;
  int a = elems_[pa + 1], b = elems_[pb + 1];
  const IMat& ra = m_.act(a);
  for (Index j = 0; j < r_; ++j)
    if (ra(i, j) != 0) push_merged(out, pb * r_ + j, ra(i, j));
  int ab = mul(a, b);
  if (ab != 0) push_merged(out, pos1(ab) * r_ + i, -1);
  push_merged(out, pa * r_ + i, 1);
  compact(out);
}

IMat BarComplex::d1() const {
  IMat d = IMat::Zero(dim(2), dim(1));
  SparseRow row;
  for (Index r = 0; r < dim(2); ++r) {
    row.clear();
    d1_row(r, row);
    for (const auto& [c, v] : row) d(r, c) = v;
  }
  return d;
}

void BarComplex::d2_row(Index row, SparseRow& out) const {
  const Index nn = n() - 1;
  Index i = row % r_;
  Index triple = row / r_;
  Index pc = triple % nn;
  Index pb = (triple / nn) % nn;
  Index pa = triple / (nn * nn);
  int a = elems_[pa + 1], b = elems_[pb + 1], c = elems_[pc + 1];
  const IMat& ra = m_.act(a);
  for (Index j = 0; j < r_; ++j)
    if (ra(i, j) != 0) push_merged(out, (pb * nn + pc) * r_ + j, ra(i, j));
  int ab = mul(a, b);
  if (ab != 0) push_merged(out, (pos1(ab) * nn + pc) * r_ + i, -1);
  int bc = mul(b, c);
  if (bc != 0) push_merged(out, (pa * nn + pos1(bc)) * r_ + i, 1);
  push_merged(out, (pa * nn + pb) * r_ + i, -1);
  compact(out);
}

H1Presentation h1_presentation(const BarComplex& bar) {
  H1Presentation p;
  p.z1 = bar.z1();
  p.boundaries = bar.d0();
  p.structure = quotient_group(p.z1, p.boundaries);
  if (p.structure.free_rank != 0) throw std::logic_error("H1 of a lattice must be finite");
  return p;
}

AbelianGroup h1(const GLattice& m, const Subgroup& h, const CohomologyBounds& bounds) {
  if (h.order() > bounds.h1_group) throw resource_error("h1: subgroup order exceeds bound");
  if (m.rank() == 0 || h.order() == 1) return {};
  BarComplex bar(m, h);
  return h1_presentation(bar).structure;
}

AbelianGroup h2(const GLattice& m, const Subgroup& h, const CohomologyBounds& bounds) {
  if (h.order() > bounds.h2_group) throw resource_error("h2: subgroup order exceeds bound");
  if (m.rank() == 0 || h.order() == 1) return {};
  BarComplex bar(m, h);
  IMat z2 = bar.z2();
  IMat b2 = bar.d1();
  AbelianGroup g = quotient_group(z2, b2);
  if (g.free_rank != 0) throw std::logic_error("H2 of a lattice must be finite");
  return g;
}

AbelianGroup tate_h_minus1(const GLattice& m, const Subgroup& h) {
  if (m.rank() == 0 || h.order() == 1) return {};
  IMat norm = m.norm_matrix(h);
  IMat ker = kernel(norm);
  IMat gens(m.rank(), static_cast<Index>(h.generators.size()) * m.rank());
  for (size_t k = 0; k < h.generators.size(); ++k)
    gens.middleCols(static_cast<Index>(k) * m.rank(), m.rank()) =
        m.act(h.generators[k]) - IMat::Identity(m.rank(), m.rank());
  AbelianGroup g = quotient_group(ker, gens);
  if (g.free_rank != 0) throw std::logic_error("Tate H^-1 of a lattice must be finite");
  return g;
}

AbelianGroup h1_cyclic_direct(const GLattice& m, const Subgroup& h) {
  if (!h.is_cyclic()) throw input_error("h1_cyclic_direct: subgroup not cyclic");
  if (m.rank() == 0 || h.order() == 1) return {};
  int gen = -1;
  for (int e : h.elements)
    if (m.group()->element_order(e) == h.order()) {
      gen = e;
      break;
    }
  IMat ker = kernel(m.norm_matrix(h));
  IMat im = m.act(gen) - IMat::Identity(m.rank(), m.rank());
  return quotient_group(ker, im);
}

bool is_flabby(const GLattice& m, int bound) {
  for (const auto& h : subgroups_up_to_conjugacy(m.group(), bound))
    if (!tate_h_minus1(m, h).trivial()) return false;
  return true;
}

bool is_coflabby(const GLattice& m, int bound, const CohomologyBounds& cb) {
  for (const auto& h : subgroups_up_to_conjugacy(m.group(), bound))
    if (!h1(m, h, cb).trivial()) return false;
  return true;
}

AbelianGroup sha2_omega_direct(const GLattice& m, const CohomologyBounds& bounds) {
  const auto& g = m.group();
  if (g->order() > bounds.h2_group) throw resource_error("sha2_omega_direct: group order exceeds bound");
  if (m.rank() == 0 || g->order() == 1) return {};
  Subgroup full = full_subgroup(g);
  BarComplex bar(m, full);
  IMat z2 = bar.z2();
  IMat b2 = bar.d1();

  std::vector<Subgroup> cyclics;
  for (const auto& h : subgroups_up_to_conjugacy(g))
    if (h.order() > 1 && h.is_cyclic()) cyclics.push_back(h);
  if (cyclics.empty()) return quotient_group(z2, b2);

  // Solve res_H(Z2 c) = d1_H(u_H) for all cyclic H simultaneously; the c-part
  // of the solution space, modulo coboundaries, is the obstruction group.
  std::vector<BarComplex> bars;
  std::vector<IMat> d1s;
  Index rows = 0, cols = z2.cols();
  for (const auto& h : cyclics) {
    bars.emplace_back(m, h);
    d1s.push_back(bars.back().d1());
    rows += bars.back().dim(2);
    cols += bars.back().dim(1);
  }
  IMat sys = IMat::Zero(rows, cols);
  Index row_off = 0, col_off = z2.cols();
  for (size_t k = 0; k < cyclics.size(); ++k) {
    const BarComplex& bh = bars[k];
    const int nn = bh.n() - 1;
    for (Index pa = 0; pa < nn; ++pa)
      for (Index pb = 0; pb < nn; ++pb) {
        int a = bh.elements()[pa + 1], b = bh.elements()[pb + 1];
        Index gblock = bar.pair_block(a, b);
        Index hblock = (pa * nn + pb) * m.rank();
        for (Index i = 0; i < m.rank(); ++i) sys.row(row_off + hblock + i).head(z2.cols()) = z2.row(gblock + i);
      }
    sys.block(row_off, col_off, bh.dim(2), bh.dim(1)) = -d1s[k];
    row_off += bh.dim(2);
    col_off += bh.dim(1);
  }
  IMat ker = kernel(sys);
  IMat w = image_basis(IMat(ker.topRows(z2.cols())));
  // coboundaries of G live inside w
  auto y = solve(z2, b2);
  assert(y && "coboundaries are cocycles");
  AbelianGroup sha = quotient_group(w, *y);
  if (sha.free_rank != 0) throw std::logic_error("sha2_omega must be finite");
  return sha;
}

Int cocycle_class_order(const BarComplex& bar, const IVec& f) {
  // least e with e*f in the image of d0: gcd of the e-components of the
  // kernel of [d0 | -f]
  IMat d0 = bar.d0();
  IMat sys(d0.rows(), d0.cols() + 1);
  sys.leftCols(d0.cols()) = d0;
  sys.col(d0.cols()) = -f;
  IMat ker = kernel(sys);
  Int g = 0;
  for (Index c = 0; c < ker.cols(); ++c) g = num::gcd(g, ker(d0.cols(), c));
  if (g == 0) throw std::logic_error("cocycle class has infinite order");
  return g;
}

IVec restrict_cocycle(const BarComplex& over_g, const BarComplex& over_h, const IVec& f) {
  const Index r = over_g.rank();
  IVec out = IVec::Zero(over_h.dim(1));
  for (int i = 1; i < over_h.n(); ++i) {
    int e = over_h.elements()[i];
    out.segment(static_cast<Index>(i - 1) * r, r) = f.segment(over_g.pos1(e) * r, r);
  }
  return out;
}

IVec corestrict_cocycle(const BarComplex& over_h, const BarComplex& over_g, const IVec& f) {
  const auto& grp = over_g.module().group();
  const Index r = over_g.rank();
  // left cosets gH with representatives
  std::vector<int> helems = over_h.elements();
  std::vector<char> seen(grp->order(), 0);
  std::vector<int> reps;
  for (int a = 0; a < grp->order(); ++a) {
    if (seen[a]) continue;
    reps.push_back(a);
    for (int x : helems) seen[grp->mul(a, x)] = 1;
  }
  auto coset_rep = [&](int e) {
    for (int rep : reps)
      for (int x : helems)
        if (grp->mul(rep, x) == e) return rep;
    throw std::logic_error("coset cover");
  };
  IVec out = IVec::Zero(over_g.dim(1));
  for (int gi = 1; gi < over_g.n(); ++gi) {
    int g = over_g.elements()[gi];
    IVec acc = IVec::Zero(r);
    for (int rj : reps) {
      int grj = grp->mul(g, rj);
      int rgj = coset_rep(grj);
      int hj = grp->mul(grp->inv(rgj), grj);  // in H
      if (hj == 0) continue;                  // f normalized
      IVec val = f.segment(over_h.pos1(hj) * r, r);
      acc += mul<Int>(over_g.module().act(rgj), IMat(val));
    }
    out.segment(over_g.pos1(g) * r, r) = acc;
  }
  return out;
}

}  // namespace glat
