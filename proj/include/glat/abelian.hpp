#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "glat/normal_form.hpp"

namespace glat {

// Invariant-factor presentation: Z/d1 + Z/d2 + ... + Z^free with d1 | d2 | ...
// and every di >= 2.
struct AbelianGroup {
  std::vector<Int> torsion;
  Index free_rank = 0;

  bool trivial() const { return torsion.empty() && free_rank == 0; }
  Int torsion_order() const {
    Int o = 1;
    for (Int d : torsion) o = num::checked_mul(o, d);
    return o;
  }
  bool operator==(const AbelianGroup& o) const { return torsion == o.torsion && free_rank == o.free_rank; }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

  std::string to_string() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (Int d : torsion) {
      if (!first) os << " + ";
      os << "Z/" << d;
      first = false;
    }
    if (free_rank > 0) {
      if (!first) os << " + ";
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
    }
    return os.str();
  }
};

inline AbelianGroup abelian_from_diagonal(const std::vector<Int>& diag, Index free_rank) {
  AbelianGroup g;
  for (Int d : diag)
    if (d != 1 && d != 0) g.torsion.push_back(num::iabs(d));
  g.free_rank = free_rank;
  return g;
}

// Direct sum, renormalised to a divisibility chain.
inline AbelianGroup operator+(const AbelianGroup& a, const AbelianGroup& b) {
  std::map<Int, std::vector<int>> exps;  // prime -> one exponent per cyclic factor
  auto add_factors = [&](Int d) {
    Int m = d;
    for (Int p = 2; p * p <= m; ++p) {
      if (m % p != 0) continue;
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      exps[p].push_back(e);
    }
    if (m > 1) exps[m].push_back(1);
  };
  for (Int d : a.torsion) add_factors(d);
  for (Int d : b.torsion) add_factors(d);
  size_t k = 0;
  for (auto& [p, v] : exps) {
    std::sort(v.rbegin(), v.rend());
    k = std::max(k, v.size());
  }
  std::vector<Int> chain(k, 1);
  for (auto& [p, v] : exps)
    for (size_t i = 0; i < v.size(); ++i) {
      Int pw = 1;
      for (int j = 0; j < v[i]; ++j) pw = num::checked_mul(pw, p);
      chain[i] = num::checked_mul(chain[i], pw);
    }
  std::sort(chain.begin(), chain.end());
  AbelianGroup g;
  g.torsion = chain;
  g.free_rank = a.free_rank + b.free_rank;
  return g;
}

// Structure of span(A)/span(B); requires span(B) contained in span(A) and A
// with independent columns (a lattice basis).
inline AbelianGroup quotient_group(const IMat& basis, const IMat& sub) {
  if (basis.cols() == 0) {
    if (sub.cols() != 0 && sub.cwiseAbs().sum() != 0) throw input_error("quotient_group: sub not contained");
    return AbelianGroup{};
  }
  auto y = solve(basis, sub);
  if (!y) throw input_error("quotient_group: sub not contained in basis span");
  auto f = snf(*y, false, false);
  return abelian_from_diagonal(f.diag(), basis.cols() - f.rank);
}

// Order of v modulo span(B) inside span(A); 0 means infinite order.
inline Int order_in_quotient(const IMat& basis, const IMat& sub, const IMat& v) {
  auto z = solve(basis, v);
  if (!z) throw input_error("order_in_quotient: vector outside basis span");
  auto y = solve(basis, sub);
  if (!y) throw input_error("order_in_quotient: sub not contained in basis span");
  auto f = snf(*y, true, false);
  IMat w = mul<Int>(f.U, *z);
  Int ord = 1;
  for (Index i = 0; i < f.rank; ++i) {
    Int d = f.D(i, i);
    ord = num::lcm(ord, d / num::gcd(d, w(i, 0)));
  }
  for (Index i = f.rank; i < w.rows(); ++i)
    if (w(i, 0) != 0) return 0;
  return ord;
}

}  // namespace glat
