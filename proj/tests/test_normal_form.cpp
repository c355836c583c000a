#include <random>

#include "doctest.h"
#include "glat/abelian.hpp"
#include "glat/normal_form.hpp"
#include "oracles.hpp"

using namespace glat;

namespace {

IMat from_rows(std::initializer_list<std::initializer_list<Int>> rows) {
  IMat m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (Int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("snf of the identity") {
  IMat a = IMat::Identity(3, 3);
  auto f = snf(a);
  CHECK(f.rank == 3);
  CHECK(f.D == a);
  CHECK(mul<Int>(mul<Int>(f.U, a), f.V) == f.D);
}

TEST_CASE("snf small example") {
  IMat a = from_rows({{2, 4}, {6, 8}});
  auto f = snf(a);
  CHECK(f.rank == 2);
  CHECK(f.D(0, 0) == 2);
  CHECK(f.D(1, 1) == 4);
  CHECK(mul<Int>(mul<Int>(f.U, a), f.V) == f.D);
  CHECK(is_unimodular(f.U));
  CHECK(is_unimodular(f.V));
  CHECK(mul<Int>(f.U, f.Uinv) == IMat::Identity(2, 2));
  CHECK(mul<Int>(f.V, f.Vinv) == IMat::Identity(2, 2));
}

TEST_CASE("snf agrees with the naive oracle on random matrices") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<Int> d(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    IMat a(6, 6);
    for (Index i = 0; i < 6; ++i)
      for (Index j = 0; j < 6; ++j) a(i, j) = d(rng);
    auto f = snf(a);
    auto expect = oracle::naive_snf_diagonal(a);
    REQUIRE(f.rank == static_cast<Index>(expect.size()));
    for (Index i = 0; i < f.rank; ++i) CHECK(f.D(i, i) == expect[i]);
    for (Index i = 0; i + 1 < f.rank; ++i) CHECK(f.D(i + 1, i + 1) % f.D(i, i) == 0);
    CHECK(mul<Int>(mul<Int>(f.U, a), f.V) == f.D);
    CHECK(is_unimodular(f.U));
    CHECK(is_unimodular(f.V));
  }
}

TEST_CASE("kernel is saturated and exact") {
  IMat a = from_rows({{1, 2, 3}, {2, 4, 6}});
  IMat k = kernel(a);
  CHECK(k.cols() == 2);
  CHECK(mul<Int>(a, k).cwiseAbs().sum() == 0);
  // saturation: the kernel basis extends to a basis of Z^3
  auto f = snf(k);
  for (Index i = 0; i < f.rank; ++i) CHECK(f.D(i, i) == 1);
}

TEST_CASE("kernel of zero-row and full-rank matrices") {
  CHECK(kernel(IMat::Zero(0, 4)).cols() == 4);
  CHECK(kernel(IMat::Identity(3, 3)).cols() == 0);
}

TEST_CASE("solve finds integral solutions exactly when they exist") {
  IMat a = from_rows({{2, 0}, {0, 3}});
  IMat b(2, 1);
  b << 4, 9;
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  CHECK(mul<Int>(a, *x) == b);
  b << 1, 3;
  CHECK(!solve(a, b).has_value());
}

TEST_CASE("row hnf membership test") {
  IMat a = from_rows({{2, 1}, {0, 3}});
  // lattice spanned by columns; (1,?) not in it unless combination works
  IMat inside(2, 1);
  inside << 3, 3;  // col1 + col2
  CHECK(solve(a, inside).has_value());
  IMat outside(2, 1);
  outside << 1, 0;
  CHECK(!solve(a, outside).has_value());
}

TEST_CASE("image basis is canonical") {
  IMat a = from_rows({{2, 4}, {1, 2}});
  IMat b = from_rows({{4, 2}, {2, 1}});
  CHECK(same_lattice(a, b));
  IMat c = from_rows({{2, 0}, {0, 2}});
  CHECK(!same_lattice(a, c));
}

TEST_CASE("quotient structures") {
  // Z^2 / <(2,0),(0,4)> = Z/2 + Z/4
  IMat basis = IMat::Identity(2, 2);
  IMat sub = from_rows({{2, 0}, {0, 4}});
  AbelianGroup g = quotient_group(basis, sub);
  CHECK(g.free_rank == 0);
  REQUIRE(g.torsion.size() == 2);
  CHECK(g.torsion[0] == 2);
  CHECK(g.torsion[1] == 4);
  // Z^2 / <(1,1)> = Z
  IMat diag(2, 1);
  diag << 1, 1;
  AbelianGroup h = quotient_group(basis, diag);
  CHECK(h.torsion.empty());
  CHECK(h.free_rank == 1);
}

TEST_CASE("order in quotient") {
  IMat basis = IMat::Identity(2, 2);
  IMat sub = from_rows({{2, 0}, {0, 6}});
  IMat v(2, 1);
  v << 1, 2;
  CHECK(order_in_quotient(basis, sub, v) == 6);  // lcm(2, 3)
  v << 0, 3;
  CHECK(order_in_quotient(basis, sub, v) == 2);
}

TEST_CASE("saturation and left inverse") {
  IMat a = from_rows({{2}, {4}});
  IMat s = saturation(a);
  REQUIRE(s.cols() == 1);
  CHECK(num::iabs(s(0, 0)) == 1);
  CHECK(num::iabs(s(1, 0)) == 2);
  IMat prim(3, 1);
  prim << 1, 2, 3;
  IMat li = left_inverse_primitive(prim);
  CHECK(mul<Int>(li, prim) == IMat::Identity(1, 1));
}

TEST_CASE("abelian direct sum renormalises to a chain") {
  AbelianGroup a{{2}, 0}, b{{3}, 1};
  AbelianGroup s = a + b;
  CHECK(s.free_rank == 1);
  REQUIRE(s.torsion.size() == 1);
  CHECK(s.torsion[0] == 6);
  AbelianGroup c{{2, 4}, 0}, d{{2}, 0};
  AbelianGroup t = c + d;
  REQUIRE(t.torsion.size() == 3);
  CHECK(t.torsion[0] == 2);
  CHECK(t.torsion[1] == 2);
  CHECK(t.torsion[2] == 4);
}

TEST_CASE("sparse-row kernel matches dense kernel") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Int> d(-4, 4);
  IMat a(8, 5);
  for (Index i = 0; i < 8; ++i)
    for (Index j = 0; j < 5; ++j) a(i, j) = d(rng) / 2;  // sparse-ish
  IMat k1 = kernel(a);
  IMat k2 = kernel_rows(a.rows(), a.cols(), [&](Index r, SparseRow& row) {
    for (Index j = 0; j < a.cols(); ++j)
      if (a(r, j) != 0) row.emplace_back(j, a(r, j));
  });
  CHECK(same_lattice(k1, k2));
  CHECK(k1.cols() == k2.cols());
}

TEST_CASE("determinant via bareiss") {
  IMat a = from_rows({{2, 0, 1}, {1, 1, 0}, {3, 2, 1}});
  auto d = oracle::naive_snf_diagonal(a);
  Int expect = d[0] * d[1] * d[2];  // |det|
  CHECK(num::iabs(det(a)) == expect);
  CHECK(det(IMat::Identity(4, 4)) == 1);
}

TEST_CASE("randomized consistency: solve, kernel, image on rectangular matrices") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<Int> entry(-6, 6);
  std::uniform_int_distribution<Index> dim(1, 7);
  for (int trial = 0; trial < 60; ++trial) {
    Index m = dim(rng), n = dim(rng), k = dim(rng);
    IMat a(m, n), x(n, k);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = entry(rng);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < k; ++j) x(i, j) = entry(rng);
    // a constructed right-hand side is always solvable, and exactly
    IMat b = mul<Int>(a, x);
    auto sol = solve(a, b);
    REQUIRE(sol.has_value());
    CHECK(mul<Int>(a, *sol) == b);
    // kernel is exact and saturated
    IMat ker = kernel(a);
    if (ker.cols() > 0) {
      CHECK(mul<Int>(a, ker).cwiseAbs().sum() == 0);
      auto f = snf(ker, true, false);
      for (Index i = 0; i < f.rank; ++i) CHECK(f.D(i, i) == 1);
    }
    CHECK(ker.cols() + rank_of(a) == n);
    // hnf transform is unimodular and reproduces the echelon form
    auto h = row_hnf(a, true);
    CHECK(is_unimodular(h.U));
    CHECK(mul<Int>(h.U, a) == h.H);
    // image basis spans the same lattice as the columns
    CHECK(same_lattice(image_basis(a), a));
    // saturation contains the column span
    IMat sat = saturation(a);
    CHECK(solve(sat, a).has_value());
  }
}
