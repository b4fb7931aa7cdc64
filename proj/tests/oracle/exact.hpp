#pragma once

// Exact-rational oracles for the tests. Independent of the library's
// summation path: sums of 1/d_n are formed by binary splitting over GMP
// integers and only rounded to double at the very end.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <utility>

namespace oracle {

// Numerator/denominator of sum_{n=a}^{b} 1/den(n), unreduced.
struct Fraction {
  mpz_class num;
  mpz_class den;
};

inline Fraction reciprocal_sum(std::int64_t a, std::int64_t b, const std::function<mpz_class(std::int64_t)>& den) {
  if (a > b) return {0, 1};
  if (a == b) return {1, den(a)};
  const std::int64_t mid = a + (b - a) / 2;
  Fraction l = reciprocal_sum(a, mid, den);
  Fraction r = reciprocal_sum(mid + 1, b, den);
  return {l.num * r.den + r.num * l.den, l.den * r.den};
}

inline mpz_class power(std::int64_t n, unsigned e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(n), e);
  return out;
}

// sum_{n=a}^{b} n^{-e}
inline Fraction pseries(std::int64_t a, std::int64_t b, unsigned e) {
  return reciprocal_sum(a, b, [e](std::int64_t n) { return power(n, e); });
}

inline Fraction harmonic(std::int64_t a, std::int64_t b) { return pseries(a, b, 1); }

inline mpq_class to_mpq(const Fraction& f) {
  mpq_class q(f.num, f.den);
  q.canonicalize();
  return q;
}

// Correctly rounded enough for 1e-12 comparisons: 256-bit quotient.
inline double to_double(const Fraction& f) {
  mpf_class n(f.num, 256);
  mpf_class d(f.den, 256);
  mpf_class q(0, 256);
  q = n / d;
  return q.get_d();
}

inline double to_double(const mpq_class& q) {
  mpf_class n(q.get_num(), 256);
  mpf_class d(q.get_den(), 256);
  mpf_class r(0, 256);
  r = n / d;
  return r.get_d();
}

}  // namespace oracle
