#pragma once

// Exact integer/rational foundations: divisor arithmetic, divisor-power
// sums, Bernoulli numbers, lcm(1..n).

#include <gmpxx.h>

#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeta3 {

using Integer = mpz_class;

// Always stored in lowest terms with positive denominator (GMP keeps mpq_t
// canonical through arithmetic; construction goes through make_rational).
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Canonical "p/q" form; integers render without the "/1".
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::domain_error("parse_rational: malformed rational '" + s + "'");
  if (r.get_den() == 0)
    throw std::domain_error("parse_rational: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

// Decimal digit count of |n|; digit_count(0) = 1.
inline std::size_t digit_count(const Integer& n) {
  if (n == 0) return 1;
  Integer a = abs(n);
  // mpz_sizeinbase may overestimate by one for base 10
  std::size_t size = mpz_sizeinbase(a.get_mpz_t(), 10);
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, size - 1);
  return a < p ? size - 1 : size;
}

inline Integer pow_integer(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow_rational(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
  return r;
}

namespace detail {

constexpr unsigned kBernoulliBound = 64;

// B_0..B_bound via the defining recursion sum_{j<=m} C(m+1,j) B_j = 0.
inline const std::vector<Rational>& bernoulli_table() {
  static std::vector<Rational> table;
  static std::once_flag flag;
  std::call_once(flag, [] {
    table.resize(kBernoulliBound + 1);
    table[0] = 1;
    for (unsigned m = 1; m <= kBernoulliBound; ++m) {
      Rational acc = 0;
      for (unsigned j = 0; j < m; ++j) {
        Integer binom;
        mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
        acc += Rational(binom) * table[j];
      }
      table[m] = -acc / Rational(m + 1);
    }
  });
  return table;
}

}  // namespace detail

// Even-index Bernoulli numbers; B_2 = 1/6, B_4 = -1/30.
inline const Rational& bernoulli(unsigned k) {
  if (k % 2 != 0)
    throw std::domain_error("bernoulli: odd index " + std::to_string(k));
  if (k > detail::kBernoulliBound)
    throw std::domain_error("bernoulli: index " + std::to_string(k) +
                            " exceeds bound " +
                            std::to_string(detail::kBernoulliBound));
  return detail::bernoulli_table()[k];
}

inline std::vector<unsigned long> divisors_of(unsigned long n) {
  std::vector<unsigned long> small, large;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// sum_{d|n} d^m
inline Integer sigma(unsigned long n, unsigned m) {
  if (n == 0) throw std::domain_error("sigma: n must be positive");
  Integer acc = 0;
  for (unsigned long d : divisors_of(n)) acc += pow_integer(Integer(d), m);
  return acc;
}

inline Integer lcm_upto(unsigned long n) {
  Integer acc = 1;
  for (unsigned long j = 2; j <= n; ++j) {
    Integer jz(j);
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), jz.get_mpz_t());
  }
  return acc;
}

struct LevelData {
  unsigned long N = 1;
  std::vector<unsigned long> divisors;  // ascending, 1 and N included
  bool squarefree = true;

  std::size_t divisor_count() const { return divisors.size(); }
};

inline LevelData level_data(unsigned long N) {
  if (N == 0) throw std::domain_error("level_data: N must be positive");
  LevelData ld;
  ld.N = N;
  ld.divisors = divisors_of(N);
  unsigned long m = N;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) ld.squarefree = false;
    while (m % p == 0) m /= p;
  }
  return ld;
}

}  // namespace zeta3
