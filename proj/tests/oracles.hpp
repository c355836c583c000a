#pragma once

// Independent reference implementations kept in the test tree. They stay
// deliberately naive so they cannot share bugs with the library kernels.

#include <set>
#include <vector>

#include "glat/group.hpp"
#include "glat/matrix.hpp"

namespace oracle {

using glat::IMat;
using glat::Index;
using glat::Int;

// Plain row/column reduction Smith form: no pivot strategy, no transforms,
// divisibility fixed afterwards by pairwise gcd/lcm passes.
inline std::vector<Int> naive_snf_diagonal(IMat a) {
  const Index m = a.rows(), n = a.cols();
  Index t = 0;
  while (t < m && t < n) {
    Index pi = -1, pj = -1;
    for (Index i = t; i < m && pi < 0; ++i)
      for (Index j = t; j < n; ++j)
        if (a(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    a.row(t).swap(a.row(pi));
    a.col(t).swap(a.col(pj));
    bool again = true;
    while (again) {
      again = false;
      for (Index i = t + 1; i < m; ++i)
        while (a(i, t) != 0) {
          Int q = a(i, t) / a(t, t);
          a.row(i) -= q * a.row(t);
          if (a(i, t) != 0) {
            a.row(t).swap(a.row(i));
            again = true;
          }
        }
      for (Index j = t + 1; j < n; ++j)
        while (a(t, j) != 0) {
          Int q = a(t, j) / a(t, t);
          a.col(j) -= q * a.col(t);
          if (a(t, j) != 0) {
            a.col(t).swap(a.col(j));
            again = true;
          }
        }
    }
    ++t;
  }
  std::vector<Int> d;
  for (Index i = 0; i < t; ++i) d.push_back(a(i, i) < 0 ? -a(i, i) : a(i, i));
  // enforce the divisibility chain pairwise
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < d.size(); ++i) {
      Int g = glat::num::gcd(d[i], d[i + 1]);
      Int l = d[i] / g * d[i + 1];
      if (d[i] != g) {
        d[i] = g;
        d[i + 1] = l;
        changed = true;
      }
    }
  }
  return d;
}

// Exhaustive subgroup enumeration by testing every subset closure seed; only
// viable for tiny groups, which is the point.
inline std::set<std::vector<int>> brute_force_subgroups(const glat::FiniteGroup::Ptr& g) {
  std::set<std::vector<int>> found;
  const int n = g->order();
  std::vector<int> singles;
  for (int e = 0; e < n; ++e) singles.push_back(e);
  // closure of every subset of a generating pool of size <= 3
  auto closure = [&](std::vector<int> seed) {
    std::set<int> s(seed.begin(), seed.end());
    s.insert(0);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(s.begin(), s.end());
      for (int a : cur)
        for (int b : cur)
          if (s.insert(g->mul(a, b)).second) grew = true;
    }
    return std::vector<int>(s.begin(), s.end());
  };
  found.insert(closure({}));
  for (int a = 0; a < n; ++a) {
    found.insert(closure({a}));
    for (int b = a + 1; b < n; ++b) {
      found.insert(closure({a, b}));
      for (int c = b + 1; c < n; ++c) {
        found.insert(closure({a, b, c}));
        if (n <= 16)  // only elementary abelian 2-groups need a 4th generator at this scale
          for (int e = c + 1; e < n; ++e) found.insert(closure({a, b, c, e}));
      }
    }
  }
  return found;
}

}  // namespace oracle
