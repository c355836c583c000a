#pragma once

#include <Eigen/Core>

#include "glat/numeric.hpp"

namespace glat {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using IMat = Mat<Int>;
using IVec = Vec<Int>;
using BMat = Mat<BigInt>;
using BVec = Vec<BigInt>;

using Index = Eigen::Index;

inline BMat widen(const IMat& a) {
  BMat b(a.rows(), a.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) b(i, j) = a(i, j);
  return b;
}

inline IMat narrow(const BMat& a) {
  IMat b(a.rows(), a.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) b(i, j) = num::to_int(a(i, j));
  return b;
}

// Overflow-checked product; preferred over Eigen's operator* wherever entries
// are not known a priori to stay tiny.
template <class S>
Mat<S> mul(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() != b.rows()) throw std::logic_error("mul: shape mismatch");
  Mat<S> c = Mat<S>::Zero(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j)
    for (Index k = 0; k < a.cols(); ++k) {
      const S& bkj = b(k, j);
      if (bkj == 0) continue;
      for (Index i = 0; i < a.rows(); ++i) {
        if (a(i, k) == 0) continue;
        c(i, j) = num::checked_add(c(i, j), num::checked_mul(a(i, k), bkj));
      }
    }
  return c;
}

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> c = Mat<S>::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) c(i * b.rows() + k, j * b.cols() + l) = num::checked_mul(a(i, j), b(k, l));
    }
  return c;
}

template <class S>
Mat<S> direct_sum_mat(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> c = Mat<S>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  c.topLeftCorner(a.rows(), a.cols()) = a;
  c.bottomRightCorner(b.rows(), b.cols()) = b;
  return c;
}

template <class S>
Mat<S> hstack(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw std::logic_error("hstack: row mismatch");
  Mat<S> c(a.rows(), a.cols() + b.cols());
  c.leftCols(a.cols()) = a;
  c.rightCols(b.cols()) = b;
  return c;
}

template <class S>
Mat<S> vstack(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::logic_error("vstack: col mismatch");
  Mat<S> c(a.rows() + b.rows(), a.cols());
  c.topRows(a.rows()) = a;
  c.bottomRows(b.rows()) = b;
  return c;
}

// Fraction-free Gaussian elimination; exact determinant.
template <class S>
S det_impl(Mat<S> a) {
  const Index n = a.rows();
  if (n != a.cols()) throw std::logic_error("det: not square");
  if (n == 0) return S(1);
  S sign(1), prev(1);
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index p = -1;
      for (Index i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return S(0);
      a.row(k).swap(a.row(p));
      sign = num::checked_neg(sign);
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        S t = num::checked_sub(num::checked_mul(a(k, k), a(i, j)), num::checked_mul(a(i, k), a(k, j)));
        a(i, j) = num::quot_trunc(t, prev);  // Bareiss: division is exact
      }
      a(i, k) = S(0);
    }
    prev = a(k, k);
  }
  return num::checked_mul(sign, a(n - 1, n - 1));
}

inline Int det(const IMat& a) {
  try {
    return det_impl<Int>(a);
  } catch (const overflow_error&) {
    return num::to_int(det_impl<BigInt>(widen(a)));
  }
}

inline bool is_unimodular(const IMat& a) {
  if (a.rows() != a.cols()) return false;
  try {
    Int d = det(a);
    return d == 1 || d == -1;
  } catch (const precision_error&) {
    return false;
  }
}

inline bool is_permutation_matrix(const IMat& a) {
  if (a.rows() != a.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j) {
    int ones = 0;
    for (Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) == 1)
        ++ones;
      else if (a(i, j) != 0)
        return false;
    }
    if (ones != 1) return false;
  }
  for (Index i = 0; i < a.rows(); ++i)
    if (a.row(i).cwiseAbs().sum() != 1) return false;
  return true;
}

}  // namespace glat
