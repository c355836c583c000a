#include "glat/extension.hpp"

#include <cassert>

namespace glat {

namespace {

constexpr Index kClassRouteHomLimit = 2000;

void certify(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("certificate check failed: ") + what);
}

void require_ses(const ExactSequence& e) {
  if (e.terms.size() != 3 || e.maps.size() != 2) throw input_error("expected a short exact sequence");
}

IMat act_on_hom(const GLattice& a, const GLattice& c, int g, const IMat& u) {
  // (g.u) = rho_A(g) u rho_C(g)^-1
  return mul<Int>(a.act(g), mul<Int>(u, c.act_inv(g)));
}

}  // namespace

bool cocycle_condition_holds(const GLattice& a, const GLattice& c, const std::vector<IMat>& f) {
  const auto& grp = a.group();
  const int n = grp->order();
  if (static_cast<int>(f.size()) != n) return false;
  if (f[0].cwiseAbs().sum() != 0) return false;
  auto check_pair = [&](int g1, int g2) {
    IMat expect = act_on_hom(a, c, g1, f[g2]) + f[g1];
    return f[grp->mul(g1, g2)] == expect;
  };
  if (static_cast<long long>(n) * n <= 4096) {
    for (int g1 = 0; g1 < n; ++g1)
      for (int g2 = 0; g2 < n; ++g2)
        if (!check_pair(g1, g2)) return false;
    return true;
  }
  for (int s : grp->generator_indices())
    for (int g = 0; g < n; ++g)
      if (!check_pair(s, g)) return false;
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<int> d(0, n - 1);
  for (int t = 0; t < 512; ++t)
    if (!check_pair(d(rng), d(rng))) return false;
  return true;
}

std::vector<IMat> cocycle_from_generator_values(const GLattice& a, const GLattice& c,
                                                const std::vector<IMat>& gen_values) {
  const auto& grp = a.group();
  if (gen_values.size() != grp->generator_indices().size())
    throw input_error("cocycle: one matrix per generator required");
  std::vector<IMat> f(grp->order());
  f[0] = IMat::Zero(a.rank(), c.rank());
  std::vector<char> done(grp->order(), 0);
  done[0] = 1;
  // walk the word structure; parent is always resolved first
  bool progress = true;
  while (progress) {
    progress = false;
    for (int e = 1; e < grp->order(); ++e) {
      if (done[e] || !done[grp->parent_of(e)]) continue;
      int k = grp->gen_of(e);
      int gen = grp->generator_indices()[k];
      f[e] = act_on_hom(a, c, gen, f[grp->parent_of(e)]) + gen_values[k];
      done[e] = 1;
      progress = true;
    }
  }
  if (!cocycle_condition_holds(a, c, f)) throw input_error("generator values do not satisfy the cocycle condition");
  return f;
}

ExtensionClass extension_from_cocycle(const GLattice& a, const GLattice& c, const std::vector<IMat>& f) {
  if (a.group() != c.group()) throw input_error("extension: different groups");
  if (!cocycle_condition_holds(a, c, f)) throw input_error("cocycle condition fails");
  const auto& grp = a.group();
  std::vector<IMat> gens;
  for (int gi : grp->generator_indices()) {
    IMat b = IMat::Zero(a.rank() + c.rank(), a.rank() + c.rank());
    b.topLeftCorner(a.rank(), a.rank()) = a.act(gi);
    b.topRightCorner(a.rank(), c.rank()) = mul<Int>(f[gi], c.act(gi));
    b.bottomRightCorner(c.rank(), c.rank()) = c.act(gi);
    gens.push_back(std::move(b));
  }
  ExtensionClass ext;
  ext.sub = a;
  ext.quotient = c;
  ext.cocycle = f;
  ext.middle = GLattice(grp, std::move(gens), a.rank() + c.rank());
  IMat iota = IMat::Zero(a.rank() + c.rank(), a.rank());
  iota.topRows(a.rank()) = IMat::Identity(a.rank(), a.rank());
  IMat pi = IMat::Zero(c.rank(), a.rank() + c.rank());
  pi.rightCols(c.rank()) = IMat::Identity(c.rank(), c.rank());
  ext.seq.terms = {a, ext.middle, c};
  ext.seq.maps = {LatticeMap(a, ext.middle, iota), LatticeMap(ext.middle, c, pi)};
  auto diag = verify_exactness(ext.seq);
  certify(diag.ok, "cocycle extension exactness");
  return ext;
}

IMat canonical_section(const ExactSequence& e) {
  require_ses(e);
  const IMat& pi = e.maps[1].matrix;
  auto s = solve(pi, IMat::Identity(pi.rows(), pi.rows()));
  if (!s) throw input_error("sequence is not right-exact");
  return *s;
}

std::vector<IMat> cocycle_from_section(const ExactSequence& e, const IMat& s) {
  require_ses(e);
  const GLattice& a = e.terms[0];
  const GLattice& b = e.terms[1];
  const GLattice& c = e.terms[2];
  const IMat& iota = e.maps[0].matrix;
  const IMat& pi = e.maps[1].matrix;
  // pi * s must be equivariant
  IMat ps = mul<Int>(pi, s);
  for (size_t k = 0; k < c.gen_matrices().size(); ++k)
    if (mul<Int>(c.gen_matrices()[k], ps) != mul<Int>(ps, c.gen_matrices()[k]))
      throw input_error("section composite is not equivariant");
  IMat lift = left_inverse_primitive(iota);
  std::vector<IMat> f(a.group()->order());
  for (int g = 0; g < a.group()->order(); ++g) {
    IMat gs = mul<Int>(b.act(g), mul<Int>(s, c.act_inv(g)));
    f[g] = mul<Int>(lift, IMat(gs - s));
  }
  return f;
}

IVec cocycle_to_vector(const BarComplex& bar, const std::vector<IMat>& f) {
  IVec v = IVec::Zero(bar.dim(1));
  const Index r = bar.rank();
  for (int i = 1; i < bar.n(); ++i) v.segment(static_cast<Index>(i - 1) * r, r) = hom_to_vec(f[bar.elements()[i]]);
  return v;
}

std::vector<IMat> vector_to_cocycle(const BarComplex& bar, const IVec& v, Index rank_a, Index rank_c) {
  std::vector<IMat> f(bar.module().group()->order(), IMat::Zero(rank_a, rank_c));
  const Index r = bar.rank();
  for (int i = 1; i < bar.n(); ++i)
    f[bar.elements()[i]] = vec_to_hom(v.segment(static_cast<Index>(i - 1) * r, r), rank_a, rank_c);
  return f;
}

Int order_via_class(const ExactSequence& e) {
  require_ses(e);
  const GLattice& a = e.terms[0];
  const GLattice& c = e.terms[2];
  if (a.rank() == 0 || c.rank() == 0) return 1;
  GLattice hom = hom_lattice(c, a);
  BarComplex bar(hom, full_subgroup(a.group()));
  std::vector<IMat> f = cocycle_from_section(e, canonical_section(e));
  return cocycle_class_order(bar, cocycle_to_vector(bar, f));
}

namespace {

// gcd of the achievable factors e in { equivariant S, edge * S = e * Id } and
// one witness S attaining it.
struct GcdSolve {
  Int order = 0;
  IMat witness;
};

// columns of `maps` span the equivariant homomorphism lattice; edge_compose
// turns a coefficient vector into the composed square matrix that must equal
// e * Id.
GcdSolve order_from_intertwiners(const std::vector<IMat>& basis,
                                 const std::function<IMat(const IMat&)>& edge_compose, Index side) {
  const size_t k = basis.size();
  IMat sys(side * side, static_cast<Index>(k) + 1);
  for (size_t j = 0; j < k; ++j) {
    IMat comp = edge_compose(basis[j]);
    for (Index col = 0; col < side; ++col)
      for (Index row = 0; row < side; ++row) sys(col * side + row, static_cast<Index>(j)) = comp(row, col);
  }
  for (Index col = 0; col < side; ++col)
    for (Index row = 0; row < side; ++row)
      sys(col * side + row, static_cast<Index>(k)) = (row == col) ? -1 : 0;
  IMat ker = kernel(sys);
  GcdSolve out;
  IVec combo;
  for (Index c = 0; c < ker.cols(); ++c) {
    Int ec = ker(static_cast<Index>(k), c);
    if (ec == 0) continue;
    if (out.order == 0) {
      out.order = ec;
      combo = ker.col(c);
    } else {
      Int x, y;
      Int g = num::gcdext(out.order, ec, x, y);
      combo = x * combo + y * ker.col(c);
      out.order = g;
    }
  }
  if (out.order == 0) throw std::logic_error("no multiple of the identity factors through");
  if (out.order < 0) {
    out.order = -out.order;
    combo = -combo;
  }
  if (!basis.empty()) {
    IMat acc = IMat::Zero(basis[0].rows(), basis[0].cols());
    for (size_t j = 0; j < k; ++j)
      if (combo(static_cast<Index>(j)) != 0) acc += combo(static_cast<Index>(j)) * basis[j];
    out.witness = acc;
  }
  return out;
}

GSet gset_from_permutation_lattice(const GLattice& p) {
  if (!is_permutation_action(p)) throw input_error("middle term is not a permutation lattice");
  GSet x;
  x.group = p.group();
  x.size = static_cast<int>(p.rank());
  x.act.assign(p.group()->order(), std::vector<int>(x.size));
  for (int e = 0; e < p.group()->order(); ++e) {
    const IMat& m = p.act(e);
    for (Index col = 0; col < p.rank(); ++col)
      for (Index row = 0; row < p.rank(); ++row)
        if (m(row, col) == 1) x.act[e][col] = static_cast<int>(row);
  }
  for (int i = 0; i < x.size; ++i) x.labels.push_back("b" + std::to_string(i));
  return x;
}

}  // namespace

Int order_via_section(const ExactSequence& e) {
  require_ses(e);
  const GLattice& b = e.terms[1];
  const GLattice& c = e.terms[2];
  if (c.rank() == 0) return 1;
  const IMat& pi = e.maps[1].matrix;
  std::vector<IMat> basis;
  if (is_permutation_action(b))
    basis = equivariant_maps_to_perm(c, gset_from_permutation_lattice(b));
  else
    basis = equivariant_maps(c, b);
  return order_from_intertwiners(basis, [&](const IMat& s) { return mul<Int>(pi, s); }, c.rank()).order;
}

Int order_via_retraction(const ExactSequence& e) {
  require_ses(e);
  const GLattice& a = e.terms[0];
  const GLattice& b = e.terms[1];
  if (a.rank() == 0) return 1;
  const IMat& iota = e.maps[0].matrix;
  std::vector<IMat> basis;
  if (is_permutation_action(b))
    basis = equivariant_maps_from_perm(gset_from_permutation_lattice(b), a);
  else
    basis = equivariant_maps(b, a);
  return order_from_intertwiners(basis, [&](const IMat& t) { return mul<Int>(t, iota); }, a.rank()).order;
}

ExtensionOrder extension_order(const ExactSequence& e, bool verify) {
  require_ses(e);
  if (verify) {
    auto diag = verify_exactness(e);
    if (!diag.ok) throw input_error("extension_order: sequence not exact: " + diag.failure);
  }
  const GLattice& a = e.terms[0];
  const GLattice& b = e.terms[1];
  const GLattice& c = e.terms[2];
  const IMat& iota = e.maps[0].matrix;
  const IMat& pi = e.maps[1].matrix;

  ExtensionOrder out;
  if (a.rank() == 0 || c.rank() == 0) {
    out.order = 1;
    auto sec = section_of_multiple(e, 1);
    out.section = *sec;
  } else if (a.rank() * c.rank() <= kClassRouteHomLimit) {
    out.order = order_via_class(e);
    auto sec = section_of_multiple(e, out.order);
    if (!sec) throw std::logic_error("order certificate (section) missing");
    out.section = *sec;
  } else if (is_permutation_action(b)) {
    GSet x = gset_from_permutation_lattice(b);
    auto basis = equivariant_maps_to_perm(c, x);
    auto got = order_from_intertwiners(basis, [&](const IMat& s) { return mul<Int>(pi, s); }, c.rank());
    out.order = got.order;
    out.section = got.witness;
  } else {
    throw resource_error("extension_order: sequence too large for the class route");
  }
  certify(mul<Int>(pi, out.section) == out.order * IMat::Identity(c.rank(), c.rank()), "order section");

  // the retraction certificate comes from the section: e*Id - s*pi kills the
  // quotient, so it factors through iota
  IMat u = out.order * IMat::Identity(b.rank(), b.rank()) - mul<Int>(out.section, pi);
  auto t = solve(iota, u);
  if (!t) throw std::logic_error("order certificate (retraction) missing");
  out.retraction = *t;
  certify(mul<Int>(out.retraction, iota) == out.order * IMat::Identity(a.rank(), a.rank()), "order retraction");
  return out;
}

std::optional<IMat> section_of_multiple(const ExactSequence& e, Int m) {
  require_ses(e);
  const GLattice& b = e.terms[1];
  const GLattice& c = e.terms[2];
  const IMat& pi = e.maps[1].matrix;
  if (c.rank() == 0) return IMat::Zero(b.rank(), 0);
  std::vector<IMat> basis;
  if (is_permutation_action(b))
    basis = equivariant_maps_to_perm(c, gset_from_permutation_lattice(b));
  else
    basis = equivariant_maps(c, b);
  // solve sum x_j (pi B_j) = m Id over Z
  const size_t k = basis.size();
  IMat sys(c.rank() * c.rank(), static_cast<Index>(k));
  for (size_t j = 0; j < k; ++j) {
    IMat comp = mul<Int>(pi, basis[j]);
    sys.col(static_cast<Index>(j)) = hom_to_vec(comp);
  }
  IMat rhs = hom_to_vec(IMat(m * IMat::Identity(c.rank(), c.rank())));
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  IMat s = IMat::Zero(b.rank(), c.rank());
  for (size_t j = 0; j < k; ++j)
    if ((*x)(static_cast<Index>(j), 0) != 0) s += (*x)(static_cast<Index>(j), 0) * basis[j];
  return s;
}

std::optional<IMat> retraction_of_multiple(const ExactSequence& e, Int m) {
  require_ses(e);
  const GLattice& a = e.terms[0];
  const GLattice& b = e.terms[1];
  const IMat& iota = e.maps[0].matrix;
  if (a.rank() == 0) return IMat::Zero(0, b.rank());
  std::vector<IMat> basis;
  if (is_permutation_action(b))
    basis = equivariant_maps_from_perm(gset_from_permutation_lattice(b), a);
  else
    basis = equivariant_maps(b, a);
  const size_t k = basis.size();
  IMat sys(a.rank() * a.rank(), static_cast<Index>(k));
  for (size_t j = 0; j < k; ++j) sys.col(static_cast<Index>(j)) = hom_to_vec(IMat(mul<Int>(basis[j], iota)));
  IMat rhs = hom_to_vec(IMat(m * IMat::Identity(a.rank(), a.rank())));
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  IMat t = IMat::Zero(a.rank(), b.rank());
  for (size_t j = 0; j < k; ++j)
    if ((*x)(static_cast<Index>(j), 0) != 0) t += (*x)(static_cast<Index>(j), 0) * basis[j];
  return t;
}

std::optional<IMat> equivalent_extensions(const ExactSequence& e1, const ExactSequence& e2) {
  require_ses(e1);
  require_ses(e2);
  const GLattice &b1 = e1.terms[1], &b2 = e2.terms[1];
  if (e1.terms[0].rank() != e2.terms[0].rank() || e1.terms[2].rank() != e2.terms[2].rank())
    throw input_error("equivalent_extensions: end terms differ");
  const Index r1 = b1.rank(), r2 = b2.rank();
  const size_t gens = b1.gen_matrices().size();
  const IMat &i1 = e1.maps[0].matrix, &i2 = e2.maps[0].matrix;
  const IMat &p1 = e1.maps[1].matrix, &p2 = e2.maps[1].matrix;
  // unknown theta (r2 x r1), column-major vectorisation
  Index rows = static_cast<Index>(gens) * r1 * r2 + i1.cols() * r2 + p1.rows() * r1;
  IMat sys = IMat::Zero(rows, r1 * r2);
  IMat rhs = IMat::Zero(rows, 1);
  Index off = 0;
  for (size_t k = 0; k < gens; ++k) {
    sys.middleRows(off, r1 * r2) = kron<Int>(IMat::Identity(r1, r1), b2.gen_matrices()[k]) -
                                   kron<Int>(b1.gen_matrices()[k].transpose(), IMat::Identity(r2, r2));
    off += r1 * r2;
  }
  sys.middleRows(off, i1.cols() * r2) = kron<Int>(i1.transpose(), IMat::Identity(r2, r2));
  rhs.middleRows(off, i1.cols() * r2) = hom_to_vec(i2);
  off += i1.cols() * r2;
  sys.middleRows(off, p1.rows() * r1) = kron<Int>(IMat::Identity(r1, r1), p2);
  rhs.middleRows(off, p1.rows() * r1) = hom_to_vec(p1);
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  IMat theta(r2, r1);
  for (Index i = 0; i < r1; ++i)
    for (Index j = 0; j < r2; ++j) theta(j, i) = (*x)(i * r2 + j, 0);
  certify(is_unimodular(theta), "extension equivalence is an isomorphism");
  return theta;
}

std::pair<Int, Int> bezout_pair(Int e1, Int e2) {
  Int x, y;
  Int g = num::gcdext(e2, e1, x, y);
  if (g != 1) throw input_error("bezout_pair: orders are not coprime");
  // v*e2 - u*e1 = 1 with v = x, u = -y; shift to minimise |u|
  Int v = x, u = -y;
  Int shift = -num::quot_floor(2 * u + e2, 2 * e2);  // round u/e2 to nearest
  u += shift * e2;
  v += shift * e1;
  if (num::iabs(u - e2) < num::iabs(u) || (num::iabs(u - e2) == num::iabs(u) && u - e2 >= 0)) {
    u -= e2;
    v -= e1;
  }
  certify(v * e2 - u * e1 == 1, "bezout identity");
  return {u, v};
}

TensorExtensionResult tensor_extensions_e1(const ExactSequence& s1, const ExactSequence& s2) {
  require_ses(s1);
  require_ses(s2);
  if (s1.terms[0].group() != s2.terms[0].group())
    throw input_error("tensor_extensions: sequences over different groups (inflate first)");
  for (const auto* s : {&s1, &s2}) {
    auto d = verify_exactness(*s);
    if (!d.ok) throw input_error("tensor_extensions: input not exact: " + d.failure);
  }
  const GLattice &a1 = s1.terms[0], &b1 = s1.terms[1], &c1 = s1.terms[2];
  const GLattice &a2 = s2.terms[0], &b2 = s2.terms[1], &c2 = s2.terms[2];
  const IMat &i1 = s1.maps[0].matrix, &p1 = s1.maps[1].matrix;
  const IMat &i2 = s2.maps[0].matrix, &p2 = s2.maps[1].matrix;

  GLattice t0 = tensor(a1, a2);
  GLattice t1 = tensor(b1, b2);
  GLattice t2 = direct_sum(tensor(c1, b2), tensor(b1, c2));
  GLattice t3 = tensor(c1, c2);

  IMat iota = kron<Int>(i1, i2);
  IMat f = vstack<Int>(kron<Int>(p1, IMat::Identity(b2.rank(), b2.rank())),
                       kron<Int>(IMat::Identity(b1.rank(), b1.rank()), p2));
  IMat pi = hstack<Int>(kron<Int>(IMat::Identity(c1.rank(), c1.rank()), p2),
                        IMat(-kron<Int>(p1, IMat::Identity(c2.rank(), c2.rank()))));

  TensorExtensionResult out;
  out.four_term.terms = {t0, t1, t2, t3};
  out.four_term.maps = {LatticeMap(t0, t1, iota), LatticeMap(t1, t2, f), LatticeMap(t2, t3, pi)};
  {
    auto d = verify_exactness(out.four_term);
    if (!d.ok) throw std::logic_error("tensor four-term sequence not exact: " + d.failure);
  }

  ExtensionOrder o1 = extension_order(s1, false);
  ExtensionOrder o2 = extension_order(s2, false);
  out.e1 = o1.order;
  out.e2 = o2.order;
  if (num::gcd(out.e1, out.e2) != 1) return out;

  TensorSplitData split;
  auto [u, v] = bezout_pair(out.e1, out.e2);
  split.u = u;
  split.v = v;
  split.section = vstack<Int>(IMat(v * kron<Int>(IMat::Identity(c1.rank(), c1.rank()), o2.section)),
                              IMat(u * kron<Int>(o1.section, IMat::Identity(c2.rank(), c2.rank()))));
  certify(mul<Int>(pi, split.section) == IMat::Identity(t3.rank(), t3.rank()), "bezout section splits");

  // middle-collapsed sequence 0 -> T0 -> T1 + T3 -> T2 -> 0
  GLattice mid = direct_sum(t1, t3);
  IMat first = vstack<Int>(iota, IMat::Zero(t3.rank(), t0.rank()));
  IMat second = hstack<Int>(f, split.section);
  split.three_term.terms = {t0, mid, t2};
  split.three_term.maps = {LatticeMap(t0, mid, first), LatticeMap(mid, t2, second)};
  {
    auto d = verify_exactness(split.three_term);
    if (!d.ok) throw std::logic_error("collapsed tensor sequence not exact: " + d.failure);
  }
  // (t1 (x) t2, 0) retracts the first map up to e1*e2
  split.multiple_certificate = hstack<Int>(kron<Int>(o1.retraction, o2.retraction), IMat::Zero(t0.rank(), t3.rank()));
  certify(mul<Int>(split.multiple_certificate, first) ==
              out.e1 * out.e2 * IMat::Identity(t0.rank(), t0.rank()),
          "product retraction certificate");
  split.order = extension_order(split.three_term, false).order;
  certify(out.e1 * out.e2 % split.order == 0, "order divides the product");
  out.split = std::move(split);
  return out;
}

TensorExtensionResult tensor_extensions_e2(const ExactSequence& s1, const ExactSequence& s2) {
  require_ses(s1);
  require_ses(s2);
  if (s1.terms[0].group() != s2.terms[0].group())
    throw input_error("tensor_extensions: sequences over different groups (inflate first)");
  for (const auto* s : {&s1, &s2}) {
    auto d = verify_exactness(*s);
    if (!d.ok) throw input_error("tensor_extensions: input not exact: " + d.failure);
  }
  const GLattice &a1 = s1.terms[0], &b1 = s1.terms[1], &c1 = s1.terms[2];
  const GLattice &a2 = s2.terms[0], &b2 = s2.terms[1], &c2 = s2.terms[2];
  const IMat &i1 = s1.maps[0].matrix, &p1 = s1.maps[1].matrix;
  const IMat &i2 = s2.maps[0].matrix, &p2 = s2.maps[1].matrix;

  GLattice t0 = tensor(a1, a2);
  GLattice t1 = direct_sum(tensor(a1, b2), tensor(b1, a2));
  GLattice t2 = tensor(b1, b2);
  GLattice t3 = tensor(c1, c2);

  IMat iota = vstack<Int>(kron<Int>(IMat::Identity(a1.rank(), a1.rank()), i2),
                          IMat(-kron<Int>(i1, IMat::Identity(a2.rank(), a2.rank()))));
  IMat f = hstack<Int>(kron<Int>(i1, IMat::Identity(b2.rank(), b2.rank())),
                       kron<Int>(IMat::Identity(b1.rank(), b1.rank()), i2));
  IMat pi = kron<Int>(p1, p2);

  TensorExtensionResult out;
  out.four_term.terms = {t0, t1, t2, t3};
  out.four_term.maps = {LatticeMap(t0, t1, iota), LatticeMap(t1, t2, f), LatticeMap(t2, t3, pi)};
  {
    auto d = verify_exactness(out.four_term);
    if (!d.ok) throw std::logic_error("tensor four-term sequence not exact: " + d.failure);
  }

  ExtensionOrder o1 = extension_order(s1, false);
  ExtensionOrder o2 = extension_order(s2, false);
  out.e1 = o1.order;
  out.e2 = o2.order;
  if (num::gcd(out.e1, out.e2) != 1) return out;

  TensorSplitData split;
  auto [u, v] = bezout_pair(out.e1, out.e2);
  split.u = u;
  split.v = v;
  // retraction t(a1 (x) b2, b1 (x) a2) = v a1 (x) t2(b2) + u t1(b1) (x) a2
  split.section = hstack<Int>(IMat(v * kron<Int>(IMat::Identity(a1.rank(), a1.rank()), o2.retraction)),
                              IMat(u * kron<Int>(o1.retraction, IMat::Identity(a2.rank(), a2.rank()))));
  certify(mul<Int>(split.section, iota) == IMat::Identity(t0.rank(), t0.rank()), "bezout retraction splits");

  // 0 -> T1 -> T0 + T2 -> T3 -> 0
  GLattice mid = direct_sum(t0, t2);
  IMat first = vstack<Int>(split.section, f);
  IMat second = hstack<Int>(IMat::Zero(t3.rank(), t0.rank()), pi);
  split.three_term.terms = {t1, mid, t3};
  split.three_term.maps = {LatticeMap(t1, mid, first), LatticeMap(mid, t3, second)};
  {
    auto d = verify_exactness(split.three_term);
    if (!d.ok) throw std::logic_error("collapsed tensor sequence not exact: " + d.failure);
  }
  split.multiple_certificate = vstack<Int>(IMat::Zero(t0.rank(), t3.rank()), IMat(kron<Int>(o1.section, o2.section)));
  certify(mul<Int>(second, split.multiple_certificate) ==
              out.e1 * out.e2 * IMat::Identity(t3.rank(), t3.rank()),
          "product section certificate");
  split.order = extension_order(split.three_term, false).order;
  certify(out.e1 * out.e2 % split.order == 0, "order divides the product");
  out.split = std::move(split);
  return out;
}

KlyachkoResult klyachko_sequence(const std::vector<GSet>& xs) {
  if (xs.empty()) throw input_error("klyachko_sequence: no G-sets");
  KlyachkoResult out;
  for (const auto& x : xs) {
    out.sizes.push_back(x.size);
    out.size_product = num::checked_mul(out.size_product, x.size);
  }
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (num::gcd(Int(xs[i].size), Int(xs[j].size)) != 1)
        throw input_error("klyachko_sequence: sizes are not pairwise coprime");
  ExactSequence cur = augmentation_sequence(xs[0]);
  for (size_t i = 1; i < xs.size(); ++i) {
    TensorExtensionResult r = tensor_extensions_e1(cur, augmentation_sequence(xs[i]));
    if (!r.split) throw input_error("klyachko_sequence: orders not coprime at step " + std::to_string(i));
    cur = r.split->three_term;
  }
  out.order = extension_order(cur, false).order;
  certify(out.size_product % out.order == 0, "order divides the size product");
  out.seq = std::move(cur);
  return out;
}

}  // namespace glat
