#pragma once

#include <initializer_list>

#include "glat/group.hpp"
#include "glat/lattice.hpp"

namespace testutil {

using glat::FiniteGroup;
using glat::Perm;

// 1-based cycle notation helper.
inline Perm perm_from_cycles(int degree, std::initializer_list<std::initializer_list<int>> cycles) {
  std::vector<int> im(degree);
  for (int i = 0; i < degree; ++i) im[i] = i;
  for (const auto& cyc : cycles) {
    std::vector<int> c(cyc);
    for (size_t i = 0; i < c.size(); ++i) {
      int from = c[i] - 1, to = c[(i + 1) % c.size()] - 1;
      im[from] = to;
    }
  }
  return Perm(im);
}

inline FiniteGroup::Ptr cyclic(int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = (i + 1) % n;
  return FiniteGroup::generate(n, {Perm(im)}, "C" + std::to_string(n));
}

inline FiniteGroup::Ptr sym3() {
  return FiniteGroup::generate(3, {perm_from_cycles(3, {{1, 2}}), perm_from_cycles(3, {{1, 2, 3}})}, "S3");
}

inline FiniteGroup::Ptr klein4() {
  return FiniteGroup::generate(4, {perm_from_cycles(4, {{1, 2}}), perm_from_cycles(4, {{3, 4}})}, "C2xC2");
}

inline FiniteGroup::Ptr c3c3() {
  return FiniteGroup::generate(6, {perm_from_cycles(6, {{1, 2, 3}}), perm_from_cycles(6, {{4, 5, 6}})}, "C3xC3");
}

inline FiniteGroup::Ptr alt4() {
  return FiniteGroup::generate(4, {perm_from_cycles(4, {{1, 2, 3}}), perm_from_cycles(4, {{1, 2}, {3, 4}})}, "A4");
}

inline FiniteGroup::Ptr dihedral4() {
  return FiniteGroup::generate(4, {perm_from_cycles(4, {{1, 2, 3, 4}}), perm_from_cycles(4, {{1, 3}})}, "D4");
}

inline FiniteGroup::Ptr quaternion8() {
  // left regular action on {1,-1,i,-i,j,-j,k,-k}
  Perm i(std::vector<int>{2, 3, 1, 0, 6, 7, 5, 4});
  Perm j(std::vector<int>{4, 5, 7, 6, 1, 0, 2, 3});
  return FiniteGroup::generate(8, {i, j}, "Q8");
}

inline glat::GLattice sign_lattice(const FiniteGroup::Ptr& c2) {
  glat::IMat m(1, 1);
  m << -1;
  return glat::GLattice(c2, {m}, 1);
}

}  // namespace testutil
