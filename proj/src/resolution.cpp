#include "glat/resolution.hpp"

#include <algorithm>
#include <cassert>

namespace glat {

namespace {

void certify(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("certificate check failed: ") + what);
}

struct Summand {
  size_t class_index;  // into the subgroup class list
  IMat vector;         // fixed vector of M under that subgroup
};

// Image of P^K -> M^K for the given summand list: K-orbit sums of the coset
// translates of each summand vector.
IMat fixed_image(const GLattice& m, const std::vector<GSet>& coset_sets,
                 const std::vector<Summand>& summands, const Subgroup& k) {
  std::vector<IMat> cols;
  for (const auto& s : summands) {
    const GSet& x = coset_sets[s.class_index];
    std::vector<int> orbit_of(x.size, -1);
    std::vector<int> base, rep;
    x.orbit_data(orbit_of, base, rep);
    (void)base;
    // orbits of K on the coset points
    std::vector<int> korbit(x.size, -1);
    int next = 0;
    for (int p = 0; p < x.size; ++p) {
      if (korbit[p] >= 0) continue;
      std::vector<int> frontier{p};
      korbit[p] = next;
      while (!frontier.empty()) {
        std::vector<int> nf;
        for (int q : frontier)
          for (int e : k.elements) {
            int z = x.act[e][q];
            if (korbit[z] < 0) {
              korbit[z] = next;
              nf.push_back(z);
            }
          }
        frontier = std::move(nf);
      }
      ++next;
    }
    std::vector<IMat> sums(next, IMat::Zero(m.rank(), 1));
    for (int p = 0; p < x.size; ++p) sums[korbit[p]] += mul<Int>(m.act(rep[p]), s.vector);
    for (auto& v : sums) cols.push_back(std::move(v));
  }
  IMat out = IMat::Zero(m.rank(), static_cast<Index>(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Index>(i)) = cols[i];
  return out;
}

bool covers(const GLattice& m, const std::vector<GSet>& coset_sets, const std::vector<Summand>& summands,
            const Subgroup& k, const IMat& fixed_basis) {
  if (fixed_basis.cols() == 0) return true;
  IMat image = fixed_image(m, coset_sets, summands, k);
  return solve(image, fixed_basis).has_value();
}

// candidate generators of a fixed lattice, small vectors first
std::vector<IMat> generator_candidates(const IMat& basis) {
  std::vector<IMat> cand;
  for (Index c = 0; c < basis.cols(); ++c) cand.push_back(basis.col(c));
  std::stable_sort(cand.begin(), cand.end(), [](const IMat& a, const IMat& b) {
    Int la = a.cwiseAbs().sum(), lb = b.cwiseAbs().sum();
    if (la != lb) return la < lb;
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, 0) != b(i, 0)) return a(i, 0) < b(i, 0);
    return false;
  });
  return cand;
}

}  // namespace

Resolution coflabby_resolution(const GLattice& m, const ResolutionOptions& opt) {
  const auto& g = m.group();
  std::vector<Subgroup> classes = subgroups_up_to_conjugacy(g, opt.subgroup_bound);
  // largest subgroups first
  std::stable_sort(classes.begin(), classes.end(),
                   [](const Subgroup& a, const Subgroup& b) { return a.order() > b.order(); });
  std::vector<GSet> coset_sets;
  std::vector<IMat> fixed;
  for (const auto& k : classes) {
    coset_sets.push_back(coset_gset(g, k));
    fixed.push_back(fixed_points(m, k));
  }

  std::vector<Summand> summands;
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    for (const auto& v : generator_candidates(fixed[ci])) {
      IMat image = fixed_image(m, coset_sets, summands, classes[ci]);
      if (solve(image, v).has_value()) continue;
      summands.push_back(Summand{ci, v});
    }
  }
  for (size_t ci = 0; ci < classes.size(); ++ci)
    certify(covers(m, coset_sets, summands, classes[ci], fixed[ci]), "fixed-point surjectivity");

  if (opt.minimize) {
    for (size_t drop = summands.size(); drop-- > 0;) {
      std::vector<Summand> probe;
      for (size_t i = 0; i < summands.size(); ++i)
        if (i != drop) probe.push_back(summands[i]);
      bool ok = true;
      for (size_t ci = 0; ci < classes.size() && ok; ++ci)
        ok = covers(m, coset_sets, probe, classes[ci], fixed[ci]);
      if (ok) summands = std::move(probe);
    }
  }

  Resolution r;
  r.kind = Resolution::Kind::coflabby;
  if (summands.empty()) {
    // rank-0 module
    certify(m.rank() == 0, "empty envelope only for the zero module");
    GLattice zero = GLattice::trivial(g, 0);
    r.middle_gset = GSet{g, 0, std::vector<std::vector<int>>(g->order()), {}};
    r.seq.terms = {zero, zero, m};
    r.seq.maps = {LatticeMap(zero, zero, IMat::Zero(0, 0)), LatticeMap(zero, m, IMat::Zero(0, 0))};
    r.order = 1;
    r.order_section = IMat::Zero(0, 0);
    r.order_retraction = IMat::Zero(0, 0);
    return r;
  }

  std::vector<GSet> parts;
  for (const auto& s : summands) parts.push_back(coset_sets[s.class_index]);
  r.middle_gset = disjoint_union(parts);
  GLattice p = permutation_lattice(r.middle_gset);
  IMat pi = IMat::Zero(m.rank(), p.rank());
  {
    Index off = 0;
    for (const auto& s : summands) {
      const GSet& x = coset_sets[s.class_index];
      std::vector<int> orbit_of, base, rep;
      x.orbit_data(orbit_of, base, rep);
      for (int pt = 0; pt < x.size; ++pt) pi.col(off + pt) = mul<Int>(m.act(rep[pt]), s.vector);
      off += x.size;
    }
  }
  IMat cker = kernel(pi);
  auto [csub, cinc] = sublattice(p, cker);
  r.seq.terms = {csub, p, m};
  r.seq.maps = {cinc, LatticeMap(p, m, pi)};
  {
    auto d = verify_exactness(r.seq);
    certify(d.ok, "coflabby resolution exactness");
  }
  ExtensionOrder eo = extension_order(r.seq, false);
  r.order = eo.order;
  r.order_section = eo.section;
  r.order_retraction = eo.retraction;
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    Resolution::SubgroupEvidence ev;
    ev.subgroup = classes[ci].elements;
    IMat image = fixed_image(m, coset_sets, summands, classes[ci]);
    auto sol = solve(image, fixed[ci]);
    certify(sol.has_value(), "stored surjectivity witness");
    ev.solution = *sol;
    r.evidence.push_back(std::move(ev));
  }
  return r;
}

Resolution flabby_resolution(const GLattice& m, const ResolutionOptions& opt) {
  Resolution co = coflabby_resolution(dual(m), opt);
  Resolution r;
  r.kind = Resolution::Kind::flabby;
  r.middle_gset = co.middle_gset;
  const GLattice& p = co.seq.terms[1];  // self-dual (permutation)
  GLattice f = dual(co.seq.terms[0]);
  IMat first = co.seq.maps[1].matrix.transpose();
  IMat second = co.seq.maps[0].matrix.transpose();
  r.seq.terms = {m, p, f};
  r.seq.maps = {LatticeMap(m, p, first), LatticeMap(p, f, second)};
  {
    auto d = verify_exactness(r.seq);
    certify(d.ok, "flabby resolution exactness");
  }
  r.order = co.order;
  r.order_section = co.order_retraction.transpose();
  r.order_retraction = co.order_section.transpose();
  certify(mul<Int>(r.seq.maps[1].matrix, r.order_section) == r.order * IMat::Identity(f.rank(), f.rank()),
          "flabby order section");
  certify(mul<Int>(r.order_retraction, r.seq.maps[0].matrix) == r.order * IMat::Identity(m.rank(), m.rank()),
          "flabby order retraction");
  for (const auto& k : subgroups_up_to_conjugacy(m.group(), opt.subgroup_bound)) {
    Resolution::SubgroupEvidence ev;
    ev.subgroup = k.elements;
    ev.tate = tate_h_minus1(f, k);
    certify(ev.tate.trivial(), "flabby class is flabby");
    r.evidence.push_back(std::move(ev));
  }
  return r;
}

PermutationOrderResult permutation_order_full(const GLattice& m, const ResolutionOptions& opt) {
  PermutationOrderResult out;
  out.resolution = coflabby_resolution(m, opt);
  out.value = out.resolution.order;
  out.into_permutation = out.resolution.order_section;
  out.back = out.resolution.seq.maps[1].matrix;
  certify(mul<Int>(out.back, out.into_permutation) == out.value * IMat::Identity(m.rank(), m.rank()),
          "permutation order factorisation");
  return out;
}

Int permutation_order(const GLattice& m, const ResolutionOptions& opt) {
  if (m.rank() == 0) return 1;
  return coflabby_resolution(m, opt).order;
}

Int local_permutation_order(const GLattice& m, Int p, const ResolutionOptions& opt) {
  Subgroup syl = sylow_subgroup(m.group(), p);
  if (syl.order() == 1) return 1;
  auto [res, mapping] = restrict_to(m, syl);
  (void)mapping;
  Int o = permutation_order(res, opt);
  Int q = o;
  while (q % p == 0) q /= p;
  certify(q == 1, "local permutation order is a p-power");
  return o;
}

InvertibilityResult is_invertible(const GLattice& m, const ResolutionOptions& opt) {
  InvertibilityResult out;
  out.resolution = coflabby_resolution(m, opt);
  out.pord = out.resolution.order;
  out.invertible = (out.pord == 1);
  if (out.invertible && m.rank() > 0) {
    // P = section(M) + C
    out.embedding = hstack<Int>(out.resolution.order_section, out.resolution.seq.maps[0].matrix);
    certify(is_unimodular(out.embedding), "direct summand embedding");
  }
  return out;
}

bool flabby_class_invertible(const GLattice& m, const ResolutionOptions& opt) {
  Resolution fl = flabby_resolution(m, opt);
  return is_invertible(fl.flabby_class(), opt).invertible;
}

TensorResolutionResult tensor_flabby_resolutions(const GLattice& m1, const GLattice& m2,
                                                 const ResolutionOptions& opt) {
  if (m1.group() != m2.group()) throw input_error("tensor_flabby_resolutions: different groups");
  Resolution r1 = flabby_resolution(m1, opt);
  Resolution r2 = flabby_resolution(m2, opt);
  TensorResolutionResult out;
  out.d1 = r1.order;
  out.d2 = r2.order;
  if (num::gcd(out.d1, out.d2) != 1)
    throw input_error("tensor_flabby_resolutions: permutation orders are not coprime");
  TensorExtensionResult tr = tensor_extensions_e1(r1.seq, r2.seq);
  certify(tr.split.has_value(), "coprime orders split the tensor sequence");

  const GLattice& t2 = tr.four_term.terms[2];  // (F1 x P2) + (P1 x F2)
  const IMat& fmap = tr.four_term.maps[1].matrix;
  const IMat& pimap = tr.four_term.maps[2].matrix;
  IMat fb = kernel(pimap);
  certify(same_lattice(fb, fmap), "image of f equals the kernel of pi");
  auto [fsub, finc] = sublattice(t2, fb);
  (void)finc;
  auto fbar = solve(fb, fmap);
  certify(fbar.has_value(), "tensor flabby class receives the middle term");

  Resolution r;
  r.kind = Resolution::Kind::flabby;
  r.middle_gset = product_gset(r1.middle_gset, r2.middle_gset);
  GLattice p = tr.four_term.terms[1];
  r.seq.terms = {tr.four_term.terms[0], p, fsub};
  r.seq.maps = {tr.four_term.maps[0], LatticeMap(p, fsub, *fbar)};
  {
    auto d = verify_exactness(r.seq);
    certify(d.ok, "tensor flabby resolution exactness");
  }
  ExtensionOrder eo = extension_order(r.seq, false);
  r.order = eo.order;
  r.order_section = eo.section;
  r.order_retraction = eo.retraction;
  certify((out.d1 * out.d2) % r.order == 0, "tensor resolution order divides the product");
  for (const auto& k : subgroups_up_to_conjugacy(m1.group(), opt.subgroup_bound)) {
    Resolution::SubgroupEvidence ev;
    ev.subgroup = k.elements;
    ev.tate = tate_h_minus1(fsub, k);
    certify(ev.tate.trivial(), "tensor flabby class is flabby");
    r.evidence.push_back(std::move(ev));
  }
  // F + (F1 x F2) = (F1 x P2) + (P1 x F2)
  out.class_splitting = hstack<Int>(fb, tr.split->section);
  certify(is_unimodular(out.class_splitting), "flabby class splitting");
  out.resolution = std::move(r);
  return out;
}

StablyPermutationVerdict stably_permutation_witness(const GLattice& f, const WitnessOptions& opt) {
  StablyPermutationVerdict v;
  const auto& g = f.group();
  std::vector<Subgroup> classes = subgroups_up_to_conjugacy(g, opt.subgroup_bound);
  const size_t nc = classes.size();
  std::vector<GSet> cosets;
  for (const auto& k : classes) cosets.push_back(coset_gset(g, k));

  // rank F^K = sum_H c_H * (number of K-orbits on G/H)
  IMat a(static_cast<Index>(nc), static_cast<Index>(nc));
  IMat b(static_cast<Index>(nc), 1);
  for (size_t ki = 0; ki < nc; ++ki) {
    for (size_t hi = 0; hi < nc; ++hi) {
      // K-orbit count on G/H
      const GSet& x = cosets[hi];
      std::vector<int> seen(x.size, 0);
      int orbits = 0;
      for (int p = 0; p < x.size; ++p) {
        if (seen[p]) continue;
        ++orbits;
        std::vector<int> frontier{p};
        seen[p] = 1;
        while (!frontier.empty()) {
          std::vector<int> nf;
          for (int q : frontier)
            for (int e : classes[ki].elements)
              if (!seen[x.act[e][q]]) {
                seen[x.act[e][q]] = 1;
                nf.push_back(x.act[e][q]);
              }
          frontier = std::move(nf);
        }
      }
      a(static_cast<Index>(ki), static_cast<Index>(hi)) = orbits;
    }
    b(static_cast<Index>(ki), 0) = fixed_points(f, classes[ki]).cols();
  }
  v.system = a;
  v.rhs = b;
  auto c0 = solve(a, b);
  if (!c0) {
    // no identity of any shape can satisfy the fixed-point ranks
    v.kind = StablyPermutationVerdict::Kind::disproof;
    v.note = "fixed-point rank system has no integer solution";
    return v;
  }

  // the rank system may be singular; enumerate the whole solution family
  IMat ker = kernel(a);
  std::vector<IMat> candidates;
  {
    std::vector<std::vector<Int>> shifts;
    std::vector<Int> t(static_cast<size_t>(ker.cols()), 0);
    std::function<void(size_t, Int)> walk = [&](size_t pos, Int budget) {
      if (pos == t.size()) {
        shifts.push_back(t);
        return;
      }
      for (Int val = -budget; val <= budget; ++val) {
        t[pos] = val;
        walk(pos + 1, budget - num::iabs(val));
      }
      t[pos] = 0;
    };
    walk(0, ker.cols() > 0 ? 3 : 0);
    for (const auto& s : shifts) {
      IMat c = *c0;
      for (Index kcol = 0; kcol < ker.cols(); ++kcol)
        if (s[static_cast<size_t>(kcol)] != 0) c += s[static_cast<size_t>(kcol)] * ker.col(kcol);
      candidates.push_back(c);
    }
  }
  // smaller candidate sides first
  auto total_rank = [&](const IMat& c) {
    Index total = f.rank();
    for (size_t hi = 0; hi < nc; ++hi)
      if (c(static_cast<Index>(hi), 0) < 0) total += -c(static_cast<Index>(hi), 0) * cosets[hi].size;
    return total;
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const IMat& x, const IMat& y) { return total_rank(x) < total_rank(y); });

  int budget = opt.trials;
  for (const auto& c : candidates) {
    if (budget <= 0) break;
    if (total_rank(c) > opt.rank_cap) continue;
    std::vector<GSet> nparts, pparts;
    for (size_t hi = 0; hi < nc; ++hi) {
      Int coef = c(static_cast<Index>(hi), 0);
      for (Int t = 0; t < -coef; ++t) nparts.push_back(cosets[hi]);
      for (Int t = 0; t < coef; ++t) pparts.push_back(cosets[hi]);
    }
    GLattice source = f;
    std::optional<GSet> nset;
    if (!nparts.empty()) {
      nset = disjoint_union(nparts);
      source = direct_sum(f, permutation_lattice(*nset));
    }
    if (pparts.empty()) {
      if (source.rank() == 0) {
        v.kind = StablyPermutationVerdict::Kind::witness;
        v.intertwiner = IMat::Zero(0, 0);
        for (Index i = 0; i < c.rows(); ++i) v.coefficients.push_back(c(i, 0));
        return v;
      }
      continue;
    }
    GSet pset = disjoint_union(pparts);
    if (source.rank() != pset.size) continue;

    std::vector<IMat> basis;
    for (const auto& u : equivariant_maps_to_perm(f, pset)) {
      IMat full = IMat::Zero(pset.size, source.rank());
      full.leftCols(f.rank()) = u;
      basis.push_back(std::move(full));
    }
    if (nset) {
      GLattice pperm = permutation_lattice(pset);
      for (const auto& u : equivariant_maps_from_perm(*nset, pperm)) {
        IMat full = IMat::Zero(pset.size, source.rank());
        full.rightCols(nset->size) = u;
        basis.push_back(std::move(full));
      }
    }
    int slice = std::max(100, opt.trials / std::max<int>(1, static_cast<int>(candidates.size())));
    slice = std::min(slice, budget);
    budget -= slice;
    auto combo = find_unimodular_combo(basis, slice, opt.entry_bound, opt.seed);
    if (combo) {
      v.kind = StablyPermutationVerdict::Kind::witness;
      v.intertwiner = combo->matrix;
      for (Index i = 0; i < c.rows(); ++i) v.coefficients.push_back(c(i, 0));
      certify(is_unimodular(v.intertwiner), "stable permutation witness");
      return v;
    }
  }
  v.kind = StablyPermutationVerdict::Kind::unknown;
  v.note = "no unimodular intertwiner found within the search budget";
  return v;
}

std::optional<IMat> splitting_isomorphism(const ExactSequence& e) {
  auto s = section_of_multiple(e, 1);
  if (!s) return std::nullopt;
  IMat iso = hstack<Int>(e.maps[0].matrix, *s);
  certify(is_unimodular(iso), "splitting isomorphism");
  return iso;
}

bool verify_kernel_coflabby_direct(const Resolution& r, const CohomologyBounds& cb) {
  if (r.kind != Resolution::Kind::coflabby) throw input_error("expected a coflabby resolution");
  return is_coflabby(r.kernel_term(), kDefaultGroupBound, cb);
}

}  // namespace glat
