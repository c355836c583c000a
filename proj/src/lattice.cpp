#include "glat/lattice.hpp"

#include <algorithm>
#include <cassert>

namespace glat {

struct GLattice::Cache {
  std::vector<IMat> gen;
  mutable std::mutex mtx;
  mutable std::vector<std::optional<IMat>> elem;
};

GLattice::GLattice(FiniteGroup::Ptr g, std::vector<IMat> gen_matrices, Index rank, bool validate)
    : grp_(std::move(g)), rank_(rank) {
  if (gen_matrices.size() != grp_->generator_indices().size())
    throw input_error("lattice: one matrix per group generator required");
  for (const auto& m : gen_matrices)
    if (m.rows() != rank || m.cols() != rank) throw input_error("lattice: matrix shape mismatch");
  cache_ = std::make_shared<Cache>();
  cache_->gen = std::move(gen_matrices);
  cache_->elem.assign(grp_->order(), std::nullopt);
  cache_->elem[0] = IMat::Identity(rank_, rank_);
  if (validate && !valid_action()) throw input_error("lattice: matrices do not define a group action");
}

GLattice GLattice::trivial(FiniteGroup::Ptr g, Index rank) {
  std::vector<IMat> gens(g->generator_indices().size(), IMat::Identity(rank, rank));
  return GLattice(std::move(g), std::move(gens), rank);
}

const std::vector<IMat>& GLattice::gen_matrices() const { return cache_->gen; }

const IMat& GLattice::act(int element) const {
  std::lock_guard<std::mutex> lock(cache_->mtx);
  // resolve the word chain iteratively to keep stack depth flat
  std::vector<int> chain;
  int e = element;
  while (!cache_->elem[e]) {
    chain.push_back(e);
    e = grp_->parent_of(e);
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const IMat& parent = *cache_->elem[grp_->parent_of(*it)];
    cache_->elem[*it] = mul<Int>(cache_->gen[grp_->gen_of(*it)], parent);
  }
  return *cache_->elem[element];
}

IMat GLattice::norm_matrix(const Subgroup& h) const {
  IMat n = IMat::Zero(rank_, rank_);
  for (int e : h.elements) n += act(e);
  return n;
}

bool GLattice::valid_action() const {
  for (const auto& m : cache_->gen)
    if (!is_unimodular(m)) return false;
  const auto& gens = grp_->generator_indices();
  for (int e = 0; e < grp_->order(); ++e)
    for (size_t k = 0; k < gens.size(); ++k) {
      int ge = grp_->mul(gens[k], e);
      if (mul<Int>(cache_->gen[k], act(e)) != act(ge)) return false;
    }
  return true;
}

LatticeMap::LatticeMap(GLattice src, GLattice tgt, IMat m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  if (source.group() != target.group()) throw input_error("lattice map: different groups");
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw input_error("lattice map: shape mismatch");
  for (size_t k = 0; k < source.gen_matrices().size(); ++k) {
    if (mul<Int>(target.gen_matrices()[k], matrix) != mul<Int>(matrix, source.gen_matrices()[k]))
      throw input_error("lattice map: not equivariant");
  }
}

LatticeMap compose(const LatticeMap& second, const LatticeMap& first) {
  if (second.source.rank() != first.target.rank()) throw input_error("compose: shape mismatch");
  return LatticeMap(first.source, second.target, mul<Int>(second.matrix, first.matrix));
}

LatticeMap dual_map(const LatticeMap& f) {
  return LatticeMap(dual(f.target), dual(f.source), f.matrix.transpose());
}

SequenceDiagnostics verify_exactness(const ExactSequence& seq) {
  SequenceDiagnostics d;
  auto fail = [&](const std::string& why) {
    d.ok = false;
    d.failure = why;
    return d;
  };
  if (seq.terms.size() < 2 || seq.maps.size() + 1 != seq.terms.size()) return fail("malformed sequence");
  for (size_t i = 0; i + 1 < seq.maps.size(); ++i)
    if (mul<Int>(seq.maps[i + 1].matrix, seq.maps[i].matrix).cwiseAbs().sum() != 0)
      return fail("composition at node " + std::to_string(i + 1) + " does not vanish");
  // left end: injective
  if (kernel(seq.maps.front().matrix).cols() != 0) return fail("first map not injective");
  // right end: surjective
  {
    const IMat& last = seq.maps.back().matrix;
    if (!solve(last, IMat::Identity(last.rows(), last.rows()))) return fail("last map not surjective");
  }
  for (size_t i = 0; i + 1 < seq.maps.size(); ++i) {
    IMat ker = kernel(seq.maps[i + 1].matrix);
    if (!solve(seq.maps[i].matrix, ker))
      return fail("kernel not contained in image at node " + std::to_string(i + 1));
  }
  return d;
}

ExactSequence dual_sequence(const ExactSequence& seq) {
  ExactSequence d;
  for (auto it = seq.terms.rbegin(); it != seq.terms.rend(); ++it) d.terms.push_back(dual(*it));
  for (auto it = seq.maps.rbegin(); it != seq.maps.rend(); ++it) d.maps.push_back(dual_map(*it));
  return d;
}

GLattice permutation_lattice(const GSet& x) {
  std::vector<IMat> gens;
  for (int gi : x.group->generator_indices()) {
    IMat p = IMat::Zero(x.size, x.size);
    for (int pt = 0; pt < x.size; ++pt) p(x.act[gi][pt], pt) = 1;
    gens.push_back(std::move(p));
  }
  return GLattice(x.group, std::move(gens), x.size);
}

ExactSequence augmentation_sequence(const GSet& x) {
  if (x.size < 1) throw input_error("augmentation_sequence: empty G-set");
  GLattice zx = permutation_lattice(x);
  // I_X on the basis [x_i] - [x_0], i = 1..n-1
  IMat inc = IMat::Zero(x.size, x.size - 1);
  for (int i = 1; i < x.size; ++i) {
    inc(i, i - 1) = 1;
    inc(0, i - 1) = -1;
  }
  std::vector<IMat> igens;
  for (const auto& p : zx.gen_matrices()) {
    auto a = solve(inc, mul<Int>(p, inc));
    assert(a && "augmentation ideal is G-invariant");
    igens.push_back(*a);
  }
  GLattice ix(x.group, std::move(igens), x.size - 1);
  IMat eps = IMat::Ones(1, x.size);
  ExactSequence e;
  e.terms = {ix, zx, GLattice::trivial(x.group)};
  e.maps = {LatticeMap(ix, zx, inc), LatticeMap(zx, e.terms[2], eps)};
  return e;
}

std::pair<GLattice, ExactSequence> chevalley_module(const GSet& x) {
  ExactSequence ex = augmentation_sequence(x);
  const GLattice& ix = ex.terms[0];
  const GLattice& zx = ex.terms[1];
  GLattice jx = dual(ix);
  // norm embedding and the dual of the inclusion
  IMat nx = IMat::Ones(x.size, 1);
  IMat q = ex.maps[0].matrix.transpose();
  ExactSequence f;
  f.terms = {GLattice::trivial(x.group), zx, jx};
  f.maps = {LatticeMap(f.terms[0], zx, nx), LatticeMap(zx, jx, q)};
  return {jx, f};
}

GLattice dual(const GLattice& m) {
  std::vector<IMat> gens;
  for (const auto& a : m.gen_matrices()) gens.push_back(inverse_unimodular(a).transpose());
  return GLattice(m.group(), std::move(gens), m.rank());
}

GLattice tensor(const GLattice& m1, const GLattice& m2) {
  if (m1.group() != m2.group()) throw input_error("tensor: different groups (supply a joint group)");
  std::vector<IMat> gens;
  for (size_t k = 0; k < m1.gen_matrices().size(); ++k)
    gens.push_back(kron<Int>(m1.gen_matrices()[k], m2.gen_matrices()[k]));
  return GLattice(m1.group(), std::move(gens), m1.rank() * m2.rank());
}

GLattice inflate(const GLattice& m, const JointGroup& j, size_t factor) {
  if (factor >= j.factors.size()) throw input_error("inflate: bad factor");
  if (m.group() != j.factors[factor]) throw input_error("inflate: lattice not over the chosen factor");
  std::vector<IMat> gens;
  for (int gi : j.group->generator_indices()) gens.push_back(m.act(j.proj[factor][gi]));
  return GLattice(j.group, std::move(gens), m.rank());
}

GLattice tensor_over(const JointGroup& j, const GLattice& m1, const GLattice& m2) {
  return tensor(inflate(m1, j, 0), inflate(m2, j, 1));
}

GLattice hom_lattice(const GLattice& m, const GLattice& n) {
  if (m.rank() == 0 || n.rank() == 0) return GLattice::trivial(m.group(), m.rank() * n.rank());
  return tensor(dual(m), n);
}

GLattice direct_sum(const GLattice& m1, const GLattice& m2) {
  if (m1.group() != m2.group()) throw input_error("direct_sum: different groups");
  std::vector<IMat> gens;
  for (size_t k = 0; k < m1.gen_matrices().size(); ++k)
    gens.push_back(direct_sum_mat<Int>(m1.gen_matrices()[k], m2.gen_matrices()[k]));
  return GLattice(m1.group(), std::move(gens), m1.rank() + m2.rank());
}

std::pair<GLattice, std::vector<int>> restrict_to(const GLattice& m, const Subgroup& h) {
  if (h.parent != m.group()) throw input_error("restrict_to: subgroup of a different group");
  auto [hg, mapping] = h.as_group();
  std::vector<IMat> gens;
  for (int gi : hg->generator_indices()) gens.push_back(m.act(mapping[gi]));
  return {GLattice(hg, std::move(gens), m.rank()), mapping};
}

IMat fixed_points(const GLattice& m, const Subgroup& h) {
  if (h.parent != m.group()) throw input_error("fixed_points: subgroup of a different group");
  if (h.generators.empty()) return IMat::Identity(m.rank(), m.rank());
  IMat stacked(static_cast<Index>(h.generators.size()) * m.rank(), m.rank());
  for (size_t k = 0; k < h.generators.size(); ++k)
    stacked.middleRows(static_cast<Index>(k) * m.rank(), m.rank()) =
        m.act(h.generators[k]) - IMat::Identity(m.rank(), m.rank());
  return kernel(stacked);
}

IVec hom_to_vec(const IMat& u) {
  const Index rn = u.rows(), rm = u.cols();
  IVec v(rn * rm);
  for (Index i = 0; i < rm; ++i)
    for (Index j = 0; j < rn; ++j) v(i * rn + j) = u(j, i);
  return v;
}

IMat vec_to_hom(const IVec& v, Index rank_n, Index rank_m) {
  IMat u(rank_n, rank_m);
  for (Index i = 0; i < rank_m; ++i)
    for (Index j = 0; j < rank_n; ++j) u(j, i) = v(i * rank_n + j);
  return u;
}

std::pair<GLattice, LatticeMap> sublattice(const GLattice& ambient, const IMat& basis) {
  std::vector<IMat> gens;
  for (const auto& a : ambient.gen_matrices()) {
    auto x = solve(basis, mul<Int>(a, basis));
    if (!x) throw input_error("sublattice: basis not invariant or not saturated");
    gens.push_back(*x);
  }
  GLattice sub(ambient.group(), std::move(gens), basis.cols());
  return {sub, LatticeMap(sub, ambient, basis)};
}

std::pair<GLattice, LatticeMap> quotient_lattice(const GLattice& ambient, const IMat& image_basis) {
  const Index p = ambient.rank();
  auto f = snf(image_basis, true, true);
  if (f.rank != image_basis.cols()) throw input_error("quotient_lattice: image basis not independent");
  for (Index i = 0; i < f.rank; ++i)
    if (f.D(i, i) != 1) throw input_error("quotient_lattice: image not saturated");
  const Index q = p - f.rank;
  IMat proj = f.U.bottomRows(q);        // quotient coordinates
  IMat inj = f.Uinv.rightCols(q);       // complement basis
  std::vector<IMat> gens;
  for (const auto& a : ambient.gen_matrices()) gens.push_back(mul<Int>(proj, mul<Int>(a, inj)));
  GLattice quot(ambient.group(), std::move(gens), q);
  return {quot, LatticeMap(ambient, quot, proj)};
}

std::vector<IMat> equivariant_maps(const GLattice& m, const GLattice& n) {
  if (m.group() != n.group()) throw input_error("equivariant_maps: different groups");
  const Index rm = m.rank(), rn = n.rank();
  const size_t k = m.gen_matrices().size();
  if (rm * rn == 0) return {};
  IMat sys(static_cast<Index>(k) * rm * rn, rm * rn);
  for (size_t s = 0; s < k; ++s) {
    IMat blockA = kron<Int>(IMat::Identity(rm, rm), n.gen_matrices()[s]);
    IMat blockB = kron<Int>(m.gen_matrices()[s].transpose(), IMat::Identity(rn, rn));
    sys.middleRows(static_cast<Index>(s) * rm * rn, rm * rn) = blockA - blockB;
  }
  IMat ker = kernel(sys);
  std::vector<IMat> out;
  for (Index c = 0; c < ker.cols(); ++c) {
    IMat u(rn, rm);
    for (Index i = 0; i < rm; ++i)
      for (Index j = 0; j < rn; ++j) u(j, i) = ker(i * rn + j, c);
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<IMat> equivariant_maps_from_perm(const GSet& x, const GLattice& m) {
  std::vector<int> orbit_of, base, rep;
  x.orbit_data(orbit_of, base, rep);
  std::vector<IMat> out;
  for (int b : base) {
    Subgroup stab = x.stabilizer(b);
    IMat fixed = fixed_points(m, stab);
    for (Index c = 0; c < fixed.cols(); ++c) {
      IMat u = IMat::Zero(m.rank(), x.size);
      for (int pt = 0; pt < x.size; ++pt) {
        if (orbit_of[pt] != orbit_of[b]) continue;
        u.col(pt) = mul<Int>(m.act(rep[pt]), IMat(fixed.col(c)));
      }
      out.push_back(std::move(u));
    }
  }
  return out;
}

std::vector<IMat> equivariant_maps_to_perm(const GLattice& m, const GSet& x) {
  std::vector<int> orbit_of, base, rep;
  x.orbit_data(orbit_of, base, rep);
  GLattice md = dual(m);
  std::vector<IMat> out;
  for (int b : base) {
    Subgroup stab = x.stabilizer(b);
    IMat fixed = fixed_points(md, stab);
    for (Index c = 0; c < fixed.cols(); ++c) {
      IMat u = IMat::Zero(x.size, m.rank());
      for (int pt = 0; pt < x.size; ++pt) {
        if (orbit_of[pt] != orbit_of[b]) continue;
        u.row(pt) = mul<Int>(md.act(rep[pt]), IMat(fixed.col(c))).transpose();
      }
      out.push_back(std::move(u));
    }
  }
  return out;
}

std::optional<UnimodularCombo> find_unimodular_combo(const std::vector<IMat>& basis, int trials,
                                                     Int entry_bound, std::uint64_t seed) {
  if (basis.empty()) return std::nullopt;
  const size_t k = basis.size();
  auto try_coeffs = [&](const std::vector<Int>& c) -> std::optional<UnimodularCombo> {
    IMat acc = IMat::Zero(basis[0].rows(), basis[0].cols());
    for (size_t i = 0; i < k; ++i)
      if (c[i] != 0) acc += static_cast<Int>(c[i]) * basis[i];
    if (acc.rows() == acc.cols() && is_unimodular(acc)) return UnimodularCombo{acc, c};
    return std::nullopt;
  };
  // unit vectors and signed pairs first
  std::vector<Int> c(k, 0);
  for (size_t i = 0; i < k; ++i) {
    c.assign(k, 0);
    c[i] = 1;
    if (auto r = try_coeffs(c)) return r;
  }
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j)
      for (Int si : {1, -1})
        for (Int sj : {1, -1}) {
          c.assign(k, 0);
          c[i] = si;
          c[j] = sj;
          if (auto r = try_coeffs(c)) return r;
        }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Int> dist(-entry_bound, entry_bound);
  for (int t = 0; t < trials; ++t) {
    for (size_t i = 0; i < k; ++i) c[i] = dist(rng);
    if (auto r = try_coeffs(c)) return r;
  }
  return std::nullopt;
}

bool is_permutation_action(const GLattice& m) {
  for (const auto& g : m.gen_matrices())
    if (!is_permutation_matrix(g)) return false;
  return true;
}

}  // namespace glat
