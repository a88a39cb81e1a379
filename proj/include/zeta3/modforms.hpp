#pragma once

// Concrete modular objects as q-series: Eisenstein series E_k(d tau),
// Dedekind eta quotients, and the catalog of Hauptmoduln for the genus-zero
// Fricke groups used here.

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeta3/qseries.hpp"
#include "zeta3/rational.hpp"

namespace zeta3 {

// E_k(d tau) = 1 - (2k/B_k) sum_{n>=1} sigma_{k-1}(n) q^{dn}
inline QSeries eisenstein(unsigned k, unsigned long d, std::size_t order) {
  if (k < 2 || k % 2 != 0)
    throw std::domain_error("eisenstein: weight must be even and >= 2");
  if (d == 0) throw std::domain_error("eisenstein: d must be positive");
  Rational factor = Rational(-2L * k) / bernoulli(k);
  std::vector<Rational> c(order);
  c[0] = 1;
  for (unsigned long n = 1; n * d < order; ++n)
    c[n * d] = factor * Rational(sigma(n, k - 1));
  return QSeries("q", std::move(c));
}

struct EtaFactor {
  unsigned long scale;  // d in eta(d tau)
  long exponent;        // r_d, may be negative
};

struct EtaQuotient {
  std::vector<EtaFactor> factors;
  unsigned long level = 1;

  // sum d * r_d; must be a nonnegative multiple of 24 so the expansion is a
  // genuine q-power series with valuation (sum d*r_d)/24.
  long prefactor_exponent() const {
    long acc = 0;
    for (const auto& f : factors) acc += static_cast<long>(f.scale) * f.exponent;
    return acc;
  }

  void validate() const {
    long pre = prefactor_exponent();
    if (pre < 0 || pre % 24 != 0)
      throw std::domain_error(
          "eta quotient: prefactor exponent sum d*r_d = " +
          std::to_string(pre) + " is not a nonnegative multiple of 24");
    for (const auto& f : factors)
      if (f.scale == 0 || level % f.scale != 0)
        throw std::domain_error("eta quotient: scale " +
                                std::to_string(f.scale) +
                                " does not divide level " +
                                std::to_string(level));
  }
};

namespace detail {

// prod_{n>=1} (1 - x^{d n}) to order M via the pentagonal number theorem.
inline std::vector<Integer> euler_factor(unsigned long d, std::size_t order) {
  std::vector<Integer> p(order);
  p[0] = 1;
  for (unsigned long k = 1;; ++k) {
    unsigned long e1 = d * k * (3 * k - 1) / 2;
    unsigned long e2 = d * k * (3 * k + 1) / 2;
    if (e1 >= order && e2 >= order) break;
    long s = (k % 2 == 0) ? 1 : -1;
    if (e1 < order) p[e1] += s;
    if (e2 < order) p[e2] += s;
  }
  return p;
}

inline std::vector<Integer> int_mul(const std::vector<Integer>& a,
                                    const std::vector<Integer>& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::vector<Integer> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j + i < n; ++j) {
      if (b[j] == 0) continue;
      mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return c;
}

// Inverse of an integer series with constant term +-1 (inverse stays integral).
inline std::vector<Integer> int_invert(const std::vector<Integer>& a) {
  if (a[0] != 1 && a[0] != -1)
    throw std::domain_error("int_invert: constant term must be a unit");
  std::size_t n = a.size();
  std::vector<Integer> r(n);
  r[0] = a[0];
  for (std::size_t k = 1; k < n; ++k) {
    Integer acc = 0;
    for (std::size_t j = 1; j <= k; ++j)
      mpz_addmul(acc.get_mpz_t(), a[j].get_mpz_t(), r[k - j].get_mpz_t());
    r[k] = -acc * a[0];
  }
  return r;
}

inline std::vector<Integer> int_pow(std::vector<Integer> base, long e) {
  std::size_t n = base.size();
  if (e < 0) {
    base = int_invert(base);
    e = -e;
  }
  std::vector<Integer> r(n);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = int_mul(r, base);
    e >>= 1;
    if (e > 0) base = int_mul(base, base);
  }
  return r;
}

}  // namespace detail

// Exact q-expansion q^{sum d r_d / 24} prod_d (prod_n (1 - q^{dn}))^{r_d}.
inline QSeries eta_quotient_series(const EtaQuotient& eq, std::size_t order) {
  eq.validate();
  std::size_t shift = static_cast<std::size_t>(eq.prefactor_exponent() / 24);
  std::vector<Integer> acc(order);
  acc[0] = 1;
  for (const auto& f : eq.factors)
    acc = detail::int_mul(
        acc, detail::int_pow(detail::euler_factor(f.scale, order), f.exponent));
  std::vector<Rational> c(order);
  for (std::size_t i = 0; i + shift < order; ++i) c[i + shift] = Rational(acc[i]);
  return QSeries("q", std::move(c));
}

struct HauptmodulCatalogEntry {
  unsigned long level;
  EtaQuotient quotient;
  // Leading Fourier coefficients (from index 0) used as golden checks.
  std::vector<long> expected_leading;
};

// Hauptmoduln of Gamma_0(N)* normalized with t(i oo) = 0 and leading
// coefficient 1. Levels 10..39 follow the classical eta-quotient table;
// level 6 is (eta(6)eta(1)/eta(3)eta(2))^12.
inline const std::vector<HauptmodulCatalogEntry>& hauptmodul_catalog() {
  static const std::vector<HauptmodulCatalogEntry> catalog = {
      {6, {{{6, 12}, {1, 12}, {3, -12}, {2, -12}}, 6},
       {0, 1, -12, 66, -220, 495, -804}},
      {10, {{{1, 6}, {10, 6}, {2, -6}, {5, -6}}, 10},
       {0, 1, -6, 15, -26, 51, -96}},
      {14, {{{1, 4}, {14, 4}, {2, -4}, {7, -4}}, 14},
       {0, 1, -4, 6, -8, 17, -28}},
      {15, {{{1, 3}, {15, 3}, {3, -3}, {5, -3}}, 15},
       {0, 1, -3, 0, 8, -9, 3}},
      {21, {{{1, 2}, {21, 2}, {3, -2}, {7, -2}}, 21},
       {0, 1, -2, -1, 4, -3, 0}},
      {26, {{{1, 2}, {26, 2}, {2, -2}, {13, -2}}, 26},
       {0, 1, -2, 1, -2, 4, -4}},
      {35, {{{1, 1}, {35, 1}, {5, -1}, {7, -1}}, 35},
       {0, 1, -1, -1, 0, 0, 2}},
      {39, {{{1, 1}, {39, 1}, {3, -1}, {13, -1}}, 39},
       {0, 1, -1, -1, 1, -1, 0}},
  };
  return catalog;
}

inline std::vector<unsigned long> catalog_levels() {
  std::vector<unsigned long> out;
  for (const auto& e : hauptmodul_catalog()) out.push_back(e.level);
  return out;
}

// Auxiliary levels appearing in the comparison tables whose modular data
// (Hauptmodul, F, E) is not specified by the source material; they are
// reported as not reproducible rather than guessed.
inline const std::vector<unsigned long>& unspecified_levels() {
  static const std::vector<unsigned long> levels = {8, 12, 18, 20, 50};
  return levels;
}

inline const HauptmodulCatalogEntry& hauptmodul(unsigned long N) {
  for (const auto& e : hauptmodul_catalog())
    if (e.level == N) return e;
  std::string supported;
  for (const auto& e : hauptmodul_catalog())
    supported += (supported.empty() ? "" : ",") + std::to_string(e.level);
  throw std::domain_error("hauptmodul: unsupported level " +
                          std::to_string(N) + " (supported: " + supported +
                          ")");
}

inline QSeries hauptmodul_series(unsigned long N, std::size_t order) {
  return eta_quotient_series(hauptmodul(N).quotient, order);
}

// Beukers' weight-two form E_b = (eta(3)eta(2))^7 / (eta(6)eta(1))^5,
// normalized with E_b(i oo) = 1.
inline QSeries beukers_form(std::size_t order) {
  EtaQuotient eq{{{3, 7}, {2, 7}, {6, -5}, {1, -5}}, 6};
  return eta_quotient_series(eq, order);
}

}  // namespace zeta3
