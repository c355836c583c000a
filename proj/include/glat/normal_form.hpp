#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "glat/matrix.hpp"

namespace glat {

// U * A * V = S with U, V unimodular and S diagonal with a divisibility chain.
// Uinv/Vinv are tracked alongside so saturations come for free.
template <class S>
struct SnfResult {
  Mat<S> D;  // diagonal form, same shape as A
  Mat<S> U, V, Uinv, Vinv;
  Index rank = 0;
  std::vector<S> diag() const {
    std::vector<S> d;
    for (Index i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

template <class S>
void add_row(Mat<S>& m, Index dst, Index src, const S& q) {
  for (Index j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) = num::checked_sub(m(dst, j), num::checked_mul(q, m(src, j)));
}
template <class S>
void add_col(Mat<S>& m, Index dst, Index src, const S& q) {
  for (Index i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) = num::checked_sub(m(i, dst), num::checked_mul(q, m(i, src)));
}

template <class S>
SnfResult<S> snf_impl(Mat<S> A, bool want_u, bool want_v) {
  const Index m = A.rows(), n = A.cols();
  SnfResult<S> r;
  if (want_u) {
    r.U = Mat<S>::Identity(m, m);
    r.Uinv = Mat<S>::Identity(m, m);
  }
  if (want_v) {
    r.V = Mat<S>::Identity(n, n);
    r.Vinv = Mat<S>::Identity(n, n);
  }
  auto row_op = [&](Index dst, Index src, const S& q) {
    add_row(A, dst, src, q);
    if (want_u) {
      add_row(r.U, dst, src, q);
      // inverse op on Uinv: col src += q * col dst
      add_col(r.Uinv, src, dst, num::checked_neg(q));
    }
  };
  auto col_op = [&](Index dst, Index src, const S& q) {
    add_col(A, dst, src, q);
    if (want_v) {
      add_col(r.V, dst, src, q);
      add_row(r.Vinv, src, dst, num::checked_neg(q));
    }
  };
  auto swap_rows = [&](Index a, Index b) {
    if (a == b) return;
    A.row(a).swap(A.row(b));
    if (want_u) {
      r.U.row(a).swap(r.U.row(b));
      r.Uinv.col(a).swap(r.Uinv.col(b));
    }
  };
  auto swap_cols = [&](Index a, Index b) {
    if (a == b) return;
    A.col(a).swap(A.col(b));
    if (want_v) {
      r.V.col(a).swap(r.V.col(b));
      r.Vinv.row(a).swap(r.Vinv.row(b));
    }
  };
  auto negate_row = [&](Index a) {
    for (Index j = 0; j < n; ++j) A(a, j) = num::checked_neg(A(a, j));
    if (want_u) {
      for (Index j = 0; j < m; ++j) r.U(a, j) = num::checked_neg(r.U(a, j));
      for (Index i = 0; i < m; ++i) r.Uinv(i, a) = num::checked_neg(r.Uinv(i, a));
    }
  };

  Index t = 0;
  while (t < m && t < n) {
    // smallest nonzero pivot in the trailing block
    Index pi = -1, pj = -1;
    for (Index j = t; j < n; ++j)
      for (Index i = t; i < m; ++i)
        if (A(i, j) != 0 && (pi < 0 || num::abs_less(A(i, j), A(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      // clear column t
      for (Index i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        S q = num::quot_trunc(A(i, t), A(t, t));
        if (q != 0) row_op(i, t, q);
        if (A(i, t) != 0) {  // remainder smaller than pivot: promote it
          swap_rows(t, i);
          i = t;  // restart the column pass
        }
      }
      // clear row t
      for (Index j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        S q = num::quot_trunc(A(t, j), A(t, t));
        if (q != 0) col_op(j, t, q);
        if (A(t, j) != 0) {
          swap_cols(t, j);
          j = t;
          dirty = true;  // column may be dirty again
        }
      }
      for (Index i = t + 1; i < m && !dirty; ++i)
        if (A(i, t) != 0) dirty = true;
    }

    // divisibility fix-up: pivot must divide the whole trailing block
    bool redo = false;
    for (Index i = t + 1; i < m && !redo; ++i)
      for (Index j = t + 1; j < n && !redo; ++j)
        if (A(i, j) % A(t, t) != 0) {
          row_op(t, i, S(-1));  // row t += row i
          redo = true;
        }
    if (redo) continue;  // re-eliminate at the same t

    if (A(t, t) < 0) negate_row(t);
    ++t;
  }
  r.rank = t;
  r.D = std::move(A);
  return r;
}

// Kernel via streaming column reduction over a row provider: only the n-by-n
// transform is kept, so boundary matrices never need to be materialised.
template <class S, class RowFn>
Mat<S> kernel_rows_impl(Index m, Index n, RowFn&& get_row) {
  Mat<S> V = Mat<S>::Identity(n, n);
  std::vector<Index> active(n);
  for (Index j = 0; j < n; ++j) active[j] = j;
  std::vector<S> t(n);
  std::vector<std::pair<Index, Int>> row;
  for (Index r = 0; r < m && !active.empty(); ++r) {
    row.clear();
    get_row(r, row);
    if (row.empty()) continue;
    for (size_t a = 0; a < active.size(); ++a) t[a] = S(0);
    bool any = false;
    for (const auto& [k, val] : row) {
      const S sval(val);
      for (size_t a = 0; a < active.size(); ++a) {
        const S& v = V(k, active[a]);
        if (v != 0) {
          t[a] = num::checked_add(t[a], num::checked_mul(sval, v));
          any = true;
        }
      }
    }
    if (!any) continue;
    // gcd-eliminate t down to a single nonzero entry
    while (true) {
      size_t p = active.size();
      for (size_t a = 0; a < active.size(); ++a)
        if (t[a] != 0 && (p == active.size() || num::abs_less(t[a], t[p]))) p = a;
      if (p == active.size()) break;
      bool others = false;
      for (size_t a = 0; a < active.size(); ++a) {
        if (a == p || t[a] == 0) continue;
        S q = num::quot_trunc(t[a], t[p]);
        if (q != 0) {
          add_col(V, active[a], active[p], q);
          t[a] = num::checked_sub(t[a], num::checked_mul(q, t[p]));
        }
        if (t[a] != 0) others = true;
      }
      if (!others) {
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(p));
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(p));
        break;
      }
    }
  }
  Mat<S> K(n, static_cast<Index>(active.size()));
  for (size_t a = 0; a < active.size(); ++a) K.col(static_cast<Index>(a)) = V.col(active[a]);
  return K;
}


// Row Hermite form H = U*A: echelon, positive pivots, entries above reduced.
template <class S>
struct HnfResult {
  Mat<S> H, U;
  std::vector<Index> pivot_cols;
  Index rank = 0;
};

template <class S>
HnfResult<S> row_hnf_impl(Mat<S> A, bool want_u) {
  const Index m = A.rows(), n = A.cols();
  HnfResult<S> r;
  if (want_u) r.U = Mat<S>::Identity(m, m);
  Index row = 0;
  for (Index col = 0; col < n && row < m; ++col) {
    while (true) {
      Index p = -1;
      for (Index i = row; i < m; ++i)
        if (A(i, col) != 0 && (p < 0 || num::abs_less(A(i, col), A(p, col)))) p = i;
      if (p < 0) break;
      if (p != row) {
        A.row(p).swap(A.row(row));
        if (want_u) r.U.row(p).swap(r.U.row(row));
      }
      bool clean = true;
      for (Index i = row + 1; i < m; ++i) {
        if (A(i, col) == 0) continue;
        S q = num::quot_trunc(A(i, col), A(row, col));
        if (q != 0) {
          add_row(A, i, row, q);
          if (want_u) add_row(r.U, i, row, q);
        }
        if (A(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (A(row, col) == 0) continue;
    if (A(row, col) < 0) {
      for (Index j = 0; j < n; ++j) A(row, j) = num::checked_neg(A(row, j));
      if (want_u)
        for (Index j = 0; j < m; ++j) r.U(row, j) = num::checked_neg(r.U(row, j));
    }
    for (Index i = 0; i < row; ++i) {
      S q = num::quot_floor(A(i, col), A(row, col));
      if (q != 0) {
        add_row(A, i, row, q);
        if (want_u) add_row(r.U, i, row, q);
      }
    }
    r.pivot_cols.push_back(col);
    ++row;
  }
  r.rank = row;
  r.H = std::move(A);
  return r;
}

template <class S>
std::optional<Mat<S>> solve_impl(const SnfResult<S>& f, const Mat<S>& B) {
  // A = Uinv * D * Vinv, so x = V * y with D y = U b.
  Mat<S> rhs = mul<S>(f.U, B);
  const Index n = f.V.rows();
  Mat<S> Y = Mat<S>::Zero(n, B.cols());
  for (Index c = 0; c < B.cols(); ++c) {
    for (Index i = 0; i < f.rank; ++i) {
      if (rhs(i, c) % f.D(i, i) != 0) return std::nullopt;
      Y(i, c) = num::quot_trunc(rhs(i, c), f.D(i, i));
    }
    for (Index i = f.rank; i < rhs.rows(); ++i)
      if (rhs(i, c) != 0) return std::nullopt;
  }
  return mul<S>(f.V, Y);
}

}  // namespace detail

inline SnfResult<Int> snf(const IMat& a, bool want_u = true, bool want_v = true) {
  try {
    return detail::snf_impl<Int>(a, want_u, want_v);
  } catch (const overflow_error&) {
    auto big = detail::snf_impl<BigInt>(widen(a), want_u, want_v);
    SnfResult<Int> r;
    r.D = narrow(big.D);
    if (want_u) {
      r.U = narrow(big.U);
      r.Uinv = narrow(big.Uinv);
    }
    if (want_v) {
      r.V = narrow(big.V);
      r.Vinv = narrow(big.Vinv);
    }
    r.rank = big.rank;
    return r;
  }
}

using SparseRow = std::vector<std::pair<Index, Int>>;
using RowProvider = std::function<void(Index, SparseRow&)>;

// Saturated basis of the kernel of an m x n matrix given row by row.
inline IMat kernel_rows(Index m, Index n, const RowProvider& fn) {
  try {
    return detail::kernel_rows_impl<Int>(m, n, fn);
  } catch (const overflow_error&) {
    return narrow(detail::kernel_rows_impl<BigInt>(m, n, fn));
  }
}

// Saturated basis of { x : A x = 0 }.
inline IMat kernel(const IMat& a) {
  return kernel_rows(a.rows(), a.cols(), [&](Index r, SparseRow& row) {
    for (Index k = 0; k < a.cols(); ++k)
      if (a(r, k) != 0) row.emplace_back(k, a(r, k));
  });
}

inline detail::HnfResult<Int> row_hnf(const IMat& a, bool want_u = false) {
  try {
    return detail::row_hnf_impl<Int>(a, want_u);
  } catch (const overflow_error&) {
    auto big = detail::row_hnf_impl<BigInt>(widen(a), want_u);
    detail::HnfResult<Int> r;
    r.H = narrow(big.H);
    if (want_u) r.U = narrow(big.U);
    r.pivot_cols = big.pivot_cols;
    r.rank = big.rank;
    return r;
  }
}

inline Index rank_of(const IMat& a) { return row_hnf(a).rank; }

// Canonical basis of the column-span lattice (columns of the result).
inline IMat image_basis(const IMat& a) {
  auto h = row_hnf(IMat(a.transpose()));
  IMat b(a.rows(), h.rank);
  for (Index i = 0; i < h.rank; ++i) b.col(i) = h.H.row(i).transpose();
  return b;
}

inline bool same_lattice(const IMat& a, const IMat& b) {
  IMat ia = image_basis(a), ib = image_basis(b);
  return ia.rows() == ib.rows() && ia.cols() == ib.cols() && ia == ib;
}

// Solve A X = B over the integers; nullopt when no integral solution exists.
inline std::optional<IMat> solve(const IMat& a, const IMat& b) {
  try {
    auto f = detail::snf_impl<Int>(a, true, true);
    return detail::solve_impl<Int>(f, b);
  } catch (const overflow_error&) {
    auto f = detail::snf_impl<BigInt>(widen(a), true, true);
    auto x = detail::solve_impl<BigInt>(f, widen(b));
    if (!x) return std::nullopt;
    return narrow(*x);
  }
}

// Cached factorisation for repeated solves against one matrix.
class SnfSolver {
 public:
  explicit SnfSolver(const IMat& a) : rows_(a.rows()), cols_(a.cols()) {
    try {
      fi_ = detail::snf_impl<Int>(a, true, true);
    } catch (const overflow_error&) {
      fb_ = detail::snf_impl<BigInt>(widen(a), true, true);
    }
  }
  std::optional<IMat> solve(const IMat& b) const {
    if (fi_) return detail::solve_impl<Int>(*fi_, b);
    auto x = detail::solve_impl<BigInt>(*fb_, widen(b));
    if (!x) return std::nullopt;
    return narrow(*x);
  }
  bool contains(const IMat& b) const { return solve(b).has_value(); }
  Index rank() const { return fi_ ? fi_->rank : fb_->rank; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

 private:
  Index rows_, cols_;
  std::optional<SnfResult<Int>> fi_;
  std::optional<SnfResult<BigInt>> fb_;
};

// Left inverse of a matrix with primitive columns (P * a = Identity).
inline IMat left_inverse_primitive(const IMat& a) {
  auto f = snf(a, true, true);
  if (f.rank != a.cols()) throw input_error("left_inverse_primitive: columns not independent");
  for (Index i = 0; i < f.rank; ++i)
    if (f.D(i, i) != 1) throw input_error("left_inverse_primitive: columns not primitive");
  // a = Uinv * [I;0] * Vinv  =>  left inverse = V * [I 0] * U
  IMat sel = IMat::Zero(a.cols(), a.rows());
  sel.leftCols(a.cols()) = IMat::Identity(a.cols(), a.cols());
  return mul<Int>(mul<Int>(f.V, sel), f.U);
}

// Saturation of the column span: primitive basis with the same Q-span.
inline IMat saturation(const IMat& a) {
  auto f = snf(a, true, false);
  IMat b(a.rows(), f.rank);
  for (Index i = 0; i < f.rank; ++i) b.col(i) = f.Uinv.col(i);
  return b;
}

inline IMat inverse_unimodular(const IMat& a) {
  auto x = solve(a, IMat::Identity(a.rows(), a.rows()));
  if (!x) throw input_error("matrix is not unimodular");
  return *x;
}

}  // namespace glat
