#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace glat {

// Fast lane scalar. Every arithmetic op in an elimination kernel goes through
// the checked_* helpers; on overflow the computation is redone with BigInt.
using Int = std::int64_t;
using BigInt = mpz_class;

struct overflow_error : std::runtime_error {
  overflow_error() : std::runtime_error("int64 overflow in exact kernel") {}
};

// Result of a BigInt fallback does not fit back into Int.
struct precision_error : std::runtime_error {
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

namespace num {

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error();
  return r;
}
inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_error();
  return r;
}
inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error();
  return r;
}
inline Int checked_neg(Int a) {
  if (a == INT64_MIN) throw overflow_error();
  return -a;
}

inline BigInt checked_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_neg(const BigInt& a) { return -a; }

inline Int iabs(Int a) { return a < 0 ? checked_neg(a) : a; }
inline BigInt iabs(const BigInt& a) { return abs(a); }

inline bool abs_less(Int a, Int b) {
  // |a| < |b| without overflow on INT64_MIN
  unsigned long long ua = a < 0 ? 0ULL - static_cast<unsigned long long>(a)
                                : static_cast<unsigned long long>(a);
  unsigned long long ub = b < 0 ? 0ULL - static_cast<unsigned long long>(b)
                                : static_cast<unsigned long long>(b);
  return ua < ub;
}
inline bool abs_less(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }

// Truncated quotient (C semantics), the workhorse of gcd elimination.
inline Int quot_trunc(Int a, Int b) {
  if (b == 0) throw std::logic_error("division by zero");
  if (a == INT64_MIN && b == -1) throw overflow_error();
  return a / b;
}
inline BigInt quot_trunc(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Floor quotient, used for canonical reduction above HNF pivots.
inline Int quot_floor(Int a, Int b) {
  Int q = quot_trunc(a, b);
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline BigInt quot_floor(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int gcd(Int a, Int b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}
inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(iabs(a) / gcd(a, b), iabs(b));
}

// g = gcd(a,b) = x*a + y*b with the usual minimal-coefficient normalisation.
inline Int gcdext(Int a, Int b, Int& x, Int& y) {
  Int old_r = a, r = b;
  Int old_x = 1, xx = 0;
  Int old_y = 0, yy = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int t = checked_sub(old_r, checked_mul(q, r));
    old_r = r;
    r = t;
    t = checked_sub(old_x, checked_mul(q, xx));
    old_x = xx;
    xx = t;
    t = checked_sub(old_y, checked_mul(q, yy));
    old_y = yy;
    yy = t;
  }
  if (old_r < 0) {
    old_r = checked_neg(old_r);
    old_x = checked_neg(old_x);
    old_y = checked_neg(old_y);
  }
  x = old_x;
  y = old_y;
  return old_r;
}

inline bool fits_int(const BigInt& v) { return v.fits_slong_p(); }

inline Int to_int(const BigInt& v) {
  if (!fits_int(v)) throw precision_error("exact result exceeds 64-bit range");
  return static_cast<Int>(v.get_si());
}

}  // namespace num
}  // namespace glat

// Minimal NumTraits so Eigen can host mpz_class entries. Arithmetic inside the
// kernels is done through glat::num, not Eigen expressions.
#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<glat::BigInt> : GenericNumTraits<glat::BigInt> {
  using Real = glat::BigInt;
  using NonInteger = glat::BigInt;
  using Nested = glat::BigInt;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
