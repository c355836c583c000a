#include "glat/rationality.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace glat {

namespace {

void certify(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("certificate check failed: ") + what);
}

Int gcd_of_sizes(const std::vector<int>& sizes) {
  Int g = 0;
  for (int s : sizes) g = num::gcd(g, Int(s));
  return g;
}

}  // namespace

const char* to_string(Tri t) {
  switch (t) {
    case Tri::yes:
      return "yes";
    case Tri::no:
      return "no";
    default:
      return "unknown";
  }
}

EtaleSpec make_etale_spec(std::vector<EtaleFactor> factors) {
  if (factors.empty()) throw input_error("etale spec: no factors");
  EtaleSpec spec;
  if (factors.size() == 1) {
    spec.joint = self_joint(factors[0].group);
  } else {
    std::vector<FiniteGroup::Ptr> gs;
    for (const auto& f : factors) gs.push_back(f.group);
    spec.joint = direct_product(gs);
  }
  spec.factors = std::move(factors);
  return spec;
}

EtaleSpec make_etale_spec(const FiniteGroup::Ptr& g, const Subgroup& h, int multiplicity) {
  return make_etale_spec({EtaleFactor{g, h, multiplicity}});
}

GSet etale_gset(const EtaleSpec& spec) {
  if (spec.factors.size() != spec.joint.factors.size())
    throw input_error("etale spec: factor/projection count mismatch");
  std::vector<GSet> parts;
  for (size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    if (f.group != spec.joint.factors[i]) throw input_error("etale spec: factor group mismatch");
    if (f.multiplicity < 1) throw input_error("etale spec: multiplicity must be positive");
    GSet x = pullback_coset_gset(spec.joint, i, f.subgroup);
    for (int t = 0; t < f.multiplicity; ++t) parts.push_back(x);
  }
  return disjoint_union(parts);
}

LatticeClassification classify_lattice(const GLattice& m, const ClassifyOptions& opt) {
  LatticeClassification out;
  out.flabby = flabby_resolution(m, opt.resolution);
  out.pord = out.flabby.order;
  const GLattice& f = out.flabby.flabby_class();
  InvertibilityResult inv = is_invertible(f, opt.resolution);
  out.retract_rational = inv.invertible;

  if (m.group()->order() <= opt.cohomology.h1_group)
    out.sha2_omega = h1(f, full_subgroup(m.group()), opt.cohomology);
  if (m.group()->order() <= opt.cohomology.h2_group) {
    AbelianGroup direct = sha2_omega_direct(m, opt.cohomology);
    certify(direct == out.sha2_omega, "obstruction group agrees between both routes");
    out.sha_two_routes = true;
  }
  if (out.retract_rational)
    certify(out.sha2_omega.trivial(), "retract rational forces a trivial obstruction group");

  if (!out.retract_rational) {
    out.stably_rational = Tri::no;
  } else if (opt.attempt_witness) {
    out.stable_witness = stably_permutation_witness(f, opt.witness);
    switch (out.stable_witness.kind) {
      case StablyPermutationVerdict::Kind::witness:
        out.stably_rational = Tri::yes;
        break;
      case StablyPermutationVerdict::Kind::disproof:
        out.stably_rational = Tri::no;
        break;
      default:
        out.stably_rational = Tri::unknown;
    }
  }
  if (out.stably_rational == Tri::yes) certify(out.retract_rational, "stably rational implies retract rational");
  return out;
}

std::optional<FixedPointReduction> fixed_point_reduction(const GSet& x) {
  auto orbits = x.orbits();
  int fixed_point = -1;
  for (const auto& o : orbits)
    if (o.size() == 1) {
      fixed_point = o[0];
      break;
    }
  if (fixed_point < 0) return std::nullopt;

  // remaining set Y = X minus the fixed orbit
  std::vector<int> keep;
  for (int p = 0; p < x.size; ++p)
    if (p != fixed_point) keep.push_back(p);
  std::vector<int> pos(x.size, -1);
  for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
  GSet y;
  y.group = x.group;
  y.size = static_cast<int>(keep.size());
  y.act.assign(x.group->order(), std::vector<int>(y.size));
  for (int e = 0; e < x.group->order(); ++e)
    for (size_t i = 0; i < keep.size(); ++i) y.act[e][i] = pos[x.act[e][keep[i]]];
  for (int p : keep) y.labels.push_back(x.labels.empty() ? std::to_string(p) : x.labels[p]);

  // phi : Z[Y] -> I_X, [y] -> [y] - [x0]; the dual transpose identifies J_X
  // with Z[Y]
  ExactSequence ex = augmentation_sequence(x);
  const IMat& inc = ex.maps[0].matrix;  // Z[X] <- I_X basis
  IMat cols(x.size, y.size);
  for (int i = 0; i < y.size; ++i) {
    IMat v = IMat::Zero(x.size, 1);
    v(keep[i], 0) = 1;
    v(fixed_point, 0) -= 1;
    cols.col(i) = v;
  }
  auto phi = solve(inc, cols);
  certify(phi.has_value(), "difference vectors lie in the augmentation ideal");
  FixedPointReduction red;
  red.remaining = y;
  red.matrix = phi->transpose();
  certify(is_unimodular(red.matrix), "fixed point reduction is unimodular");
  // equivariance: J_X -> Z[Y]
  auto [jx, fx] = chevalley_module(x);
  LatticeMap check(jx, permutation_lattice(y), red.matrix);
  (void)check;
  return red;
}

bool ClassificationReport::all_cross_checks_pass() const {
  for (const auto& c : cross_checks)
    if (!c.pass) return false;
  return true;
}

ClassificationReport classify_norm_one(const EtaleSpec& spec, const ClassifyOptions& opt) {
  ClassificationReport rep;
  GSet x = etale_gset(spec);
  auto [jx, fx] = chevalley_module(x);
  rep.lattice = jx;
  rep.orbit_sizes = x.orbit_sizes();
  rep.verdicts = classify_lattice(jx, opt);
  rep.reduction = fixed_point_reduction(x);

  {
    CrossCheck c;
    c.name = "pord-orbit-law";
    Int expect = rep.orbit_sizes.size() == 1 ? Int(rep.orbit_sizes[0]) : gcd_of_sizes(rep.orbit_sizes);
    c.pass = rep.verdicts.pord == expect;
    std::ostringstream os;
    os << "pord=" << rep.verdicts.pord << " expected=" << expect;
    c.detail = os.str();
    rep.cross_checks.push_back(c);
  }
  {
    CrossCheck c;
    c.name = "retract-implies-vanishing-obstruction";
    c.pass = !rep.verdicts.retract_rational || rep.verdicts.sha2_omega.trivial();
    c.detail = rep.verdicts.sha2_omega.to_string();
    rep.cross_checks.push_back(c);
  }
  if (rep.verdicts.sha_two_routes) {
    CrossCheck c;
    c.name = "obstruction-two-routes";
    c.pass = true;
    c.detail = rep.verdicts.sha2_omega.to_string();
    rep.cross_checks.push_back(c);
  }
  // Galois case: compare against cyclicity of all Sylow subgroups
  if (spec.factors.size() == 1 && spec.factors[0].multiplicity == 1 && spec.factors[0].subgroup.is_trivial()) {
    const auto& g = spec.factors[0].group;
    bool all_cyclic = true;
    for (Int p : prime_divisors(g->order()))
      if (!sylow_subgroup(g, p).is_cyclic()) all_cyclic = false;
    CrossCheck c;
    c.name = "sylow-cyclicity-criterion";
    c.pass = (rep.verdicts.retract_rational == all_cyclic);
    c.detail = all_cyclic ? "all sylow subgroups cyclic" : "some sylow subgroup non-cyclic";
    rep.cross_checks.push_back(c);
  }
  if (rep.reduction) {
    CrossCheck c;
    c.name = "fixed-point-reduction";
    c.pass = rep.verdicts.pord == 1 && rep.verdicts.retract_rational;
    c.detail = "chevalley module is permutation";
    rep.cross_checks.push_back(c);
  }
  return rep;
}

ProductSplittingReport product_splitting_check(const GSet& x, const GSet& y) {
  if (x.group != y.group) throw input_error("product_splitting_check: different groups");
  ProductSplittingReport rep;
  rep.x_sizes = x.orbit_sizes();
  rep.y_sizes = y.orbit_sizes();
  rep.hypothesis_ok = true;
  for (int mi : rep.x_sizes)
    for (int nj : rep.y_sizes)
      if (num::gcd(Int(mi), Int(nj)) != 1) rep.hypothesis_ok = false;

  ExactSequence ex = augmentation_sequence(x);
  ExactSequence ey = augmentation_sequence(y);
  TensorExtensionResult tr = tensor_extensions_e2(ex, ey);

  GSet xy = product_gset(x, y);
  ExactSequence exy = augmentation_sequence(xy);
  rep.image_matches_product_ideal = same_lattice(tr.four_term.maps[1].matrix, exy.maps[0].matrix);
  certify(rep.image_matches_product_ideal, "tensor image is the product augmentation ideal");

  // collapsed sequence 0 -> I_X (x) I_Y -> (I_X (x) Z[Y]) + (Z[X] (x) I_Y) -> I_{XxY} -> 0
  const GLattice& t0 = tr.four_term.terms[0];
  const GLattice& t1 = tr.four_term.terms[1];
  IMat fb = kernel(tr.four_term.maps[2].matrix);  // inside B1 (x) B2 = Z[X x Y]
  auto [isub, iinc] = sublattice(tr.four_term.terms[2], fb);
  (void)iinc;
  auto fbar = solve(fb, tr.four_term.maps[1].matrix);
  certify(fbar.has_value(), "middle maps onto the realised product ideal");
  ExactSequence collapsed;
  collapsed.terms = {t0, tr.four_term.terms[1], isub};
  collapsed.maps = {tr.four_term.maps[0], LatticeMap(tr.four_term.terms[1], isub, *fbar)};
  {
    auto d = verify_exactness(collapsed);
    certify(d.ok, "collapsed product sequence exactness");
  }
  ExtensionOrder eo = extension_order(collapsed, false);
  rep.collapsed_order = eo.order;

  if (!rep.hypothesis_ok) {
    certify(rep.collapsed_order != 1, "non-coprime sizes leave the sequence nonsplit");
    return rep;
  }
  certify(rep.collapsed_order == 1, "coprime sizes split the sequence");

  // explicit isomorphism on the dual side
  IMat t = eo.retraction;  // t * iota = Id on I_X (x) I_Y
  // [t; fbar] : middle -> t0 + isub is an isomorphism
  IMat fold = vstack<Int>(t, *fbar);
  certify(is_unimodular(fold), "middle term splits as a direct sum");
  // identify isub with the canonical product ideal basis
  auto w = solve(exy.maps[0].matrix, fb);
  certify(w.has_value(), "basis change to the canonical product ideal");
  certify(is_unimodular(*w), "basis change unimodular");
  // source J_{XxY} + (J_X (x) J_Y), target (J_X (x) Z[Y]) + (Z[X] (x) J_Y)
  IMat foldt = fold.transpose();
  IMat iso = hstack<Int>(mul<Int>(IMat(foldt.rightCols(isub.rank())), IMat(w->transpose())),
                         IMat(foldt.leftCols(t0.rank())));
  auto [jxy, fxy] = chevalley_module(xy);
  GLattice jx = dual(ex.terms[0]);
  GLattice jy = dual(ey.terms[0]);
  GLattice source = direct_sum(jxy, tensor(jx, jy));
  GLattice target = dual(t1);
  LatticeMap check(source, target, iso);
  (void)check;
  certify(is_unimodular(iso), "product splitting isomorphism");
  rep.isomorphism = iso;
  return rep;
}

TensorRationalityReport tensor_rationality_check(const EtaleSpec& a, const EtaleSpec& b,
                                                 const ClassifyOptions& opt) {
  TensorRationalityReport rep;
  rep.factor_a = classify_norm_one(a, opt);
  rep.factor_b = classify_norm_one(b, opt);

  // combined group: full direct product of the two joint groups
  JointGroup combined = direct_product(a.joint.group, b.joint.group);
  // pull both etale G-sets back to the combined group
  GSet xa = etale_gset(a);
  GSet xb = etale_gset(b);
  GSet x;
  x.group = combined.group;
  x.size = xa.size;
  x.labels = xa.labels;
  x.act.assign(combined.group->order(), std::vector<int>(xa.size));
  for (int e = 0; e < combined.group->order(); ++e) x.act[e] = xa.act[combined.proj[0][e]];
  GSet y;
  y.group = combined.group;
  y.size = xb.size;
  y.labels = xb.labels;
  y.act.assign(combined.group->order(), std::vector<int>(xb.size));
  for (int e = 0; e < combined.group->order(); ++e) y.act[e] = xb.act[combined.proj[1][e]];

  rep.hypothesis_ok = true;
  for (int mi : x.orbit_sizes())
    for (int nj : y.orbit_sizes())
      if (num::gcd(Int(mi), Int(nj)) != 1) rep.hypothesis_ok = false;

  GSet xy = product_gset(x, y);
  auto [jxy, fxy] = chevalley_module(xy);
  auto [jx, fx] = chevalley_module(x);
  auto [jy, fy] = chevalley_module(y);
  rep.product = classify_lattice(jxy, opt);
  rep.tensor_of_chevalleys = classify_lattice(tensor(jx, jy), opt);

  // flabby-class bookkeeping identity at the level of H^1 and invertibility
  GLattice m3 = tensor(jx, permutation_lattice(y));
  GLattice m4 = tensor(permutation_lattice(x), jy);
  LatticeClassification c3 = classify_lattice(m3, opt);
  LatticeClassification c4 = classify_lattice(m4, opt);
  Subgroup full = full_subgroup(combined.group);
  AbelianGroup lhs = h1(rep.product.flabby.flabby_class(), full, opt.cohomology) +
                     h1(rep.tensor_of_chevalleys.flabby.flabby_class(), full, opt.cohomology);
  AbelianGroup rhs = h1(c3.flabby.flabby_class(), full, opt.cohomology) +
                     h1(c4.flabby.flabby_class(), full, opt.cohomology);
  rep.class_identity_ok = (lhs == rhs);
  rep.invertibility_identity_ok = ((rep.product.retract_rational && rep.tensor_of_chevalleys.retract_rational) ==
                                   (c3.retract_rational && c4.retract_rational));

  // theorem direction: coprime + factors retract/stable => products follow
  rep.conclusions_consistent = true;
  if (rep.hypothesis_ok) {
    if (rep.factor_a.verdicts.retract_rational && rep.factor_b.verdicts.retract_rational) {
      rep.theorem_retract_conclusion = Tri::yes;
      if (!rep.product.retract_rational || !rep.tensor_of_chevalleys.retract_rational)
        rep.conclusions_consistent = false;
    }
    if (rep.factor_a.verdicts.stably_rational == Tri::yes && rep.factor_b.verdicts.stably_rational == Tri::yes) {
      rep.theorem_stable_conclusion = Tri::yes;
      if (rep.product.stably_rational == Tri::no || rep.tensor_of_chevalleys.stably_rational == Tri::no)
        rep.conclusions_consistent = false;
    }
  }
  return rep;
}

ConverseReport direct_product_converse_check(const EtaleSpec& a, const EtaleSpec& b, const ClassifyOptions& opt) {
  ConverseReport rep;
  JointGroup combined = direct_product(a.joint.group, b.joint.group);
  GSet xa = etale_gset(a);
  GSet xb = etale_gset(b);
  GSet x;
  x.group = combined.group;
  x.size = xa.size;
  x.labels = xa.labels;
  x.act.assign(combined.group->order(), std::vector<int>(xa.size));
  for (int e = 0; e < combined.group->order(); ++e) x.act[e] = xa.act[combined.proj[0][e]];
  GSet y;
  y.group = combined.group;
  y.size = xb.size;
  y.labels = xb.labels;
  y.act.assign(combined.group->order(), std::vector<int>(xb.size));
  for (int e = 0; e < combined.group->order(); ++e) y.act[e] = xb.act[combined.proj[1][e]];

  GSet xy = product_gset(x, y);
  auto [jxy, fxy] = chevalley_module(xy);

  // subgroup G1 x {1} of the combined group
  std::vector<int> g1elems;
  for (int e = 0; e < combined.group->order(); ++e)
    if (combined.proj[1][e] == 0) g1elems.push_back(e);
  Subgroup g1sub = subgroup_from_elements(combined.group, g1elems);
  auto [restricted, mapping] = restrict_to(jxy, g1sub);

  // target J_X + Z[X]^{n2-1} over the same promoted group
  const int m = x.size, n2 = y.size;
  auto [hg, hmap] = g1sub.as_group();
  (void)hmap;
  // X as a gset over the promoted group
  GSet xh;
  xh.group = restricted.group();
  xh.size = m;
  xh.labels = x.labels;
  xh.act.assign(restricted.group()->order(), std::vector<int>(m));
  for (int e = 0; e < restricted.group()->order(); ++e) xh.act[e] = x.act[mapping[e]];
  auto [jxh, fxh] = chevalley_module(xh);
  GLattice zxh = permutation_lattice(xh);
  GLattice target = jxh;
  for (int t = 1; t < n2; ++t) target = direct_sum(target, zxh);

  // explicit map: reorder (x,y) -> blocks over y, difference transform,
  // project the first block onto J_X
  IMat perm = IMat::Zero(m * n2, m * n2);
  for (int xi = 0; xi < m; ++xi)
    for (int yi = 0; yi < n2; ++yi) perm(yi * m + xi, xi * n2 + yi) = 1;
  IMat diff = IMat::Identity(m * n2, m * n2);
  for (int yi = 1; yi < n2; ++yi)
    for (int xi = 0; xi < m; ++xi) diff(yi * m + xi, xi) -= 1;
  IMat head = IMat::Zero(target.rank(), m * n2);
  head.topLeftCorner(jxh.rank(), m) = fxh.maps[1].matrix;  // Z[X] -> J_X
  head.bottomRightCorner(m * (n2 - 1), m * (n2 - 1)) = IMat::Identity(m * (n2 - 1), m * (n2 - 1));
  IMat section = canonical_section(fxy);  // J_{XxY} -> Z[XxY]
  IMat iso = mul<Int>(head, mul<Int>(diff, mul<Int>(perm, section)));
  rep.restriction_isomorphism = iso;
  rep.restriction_isomorphism_ok = is_unimodular(iso);
  certify(rep.restriction_isomorphism_ok, "restriction isomorphism unimodular");
  LatticeMap check(restricted, target, iso);
  (void)check;

  ClassificationReport ca = classify_norm_one(a, opt);
  ClassificationReport cb = classify_norm_one(b, opt);
  rep.factor_a_retract = ca.verdicts.retract_rational;
  rep.factor_b_retract = cb.verdicts.retract_rational;
  rep.composite_retract = classify_lattice(jxy, opt).retract_rational;
  rep.converse_holds = !rep.composite_retract || (rep.factor_a_retract && rep.factor_b_retract);
  return rep;
}

}  // namespace glat
