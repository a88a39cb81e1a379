#pragma once

// Dense truncated power series over Rational. Truncation order propagates as
// the minimum over the inputs; coefficients are always exact.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zeta3/rational.hpp"

namespace zeta3 {

class QSeries {
 public:
  QSeries(std::string var, std::vector<Rational> coeffs)
      : var_(std::move(var)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
      throw std::domain_error("QSeries: order must be at least 1");
  }

  static QSeries zero(const std::string& var, std::size_t order) {
    return QSeries(var, std::vector<Rational>(order));
  }

  static QSeries constant(const std::string& var, const Rational& c,
                          std::size_t order) {
    std::vector<Rational> v(order);
    v[0] = c;
    return QSeries(var, std::move(v));
  }

  // The identity series x (requires order >= 2).
  static QSeries identity(const std::string& var, std::size_t order) {
    if (order < 2) throw std::domain_error("QSeries::identity: order < 2");
    std::vector<Rational> v(order);
    v[1] = 1;
    return QSeries(var, std::move(v));
  }

  const std::string& var() const { return var_; }
  std::size_t order() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

  Rational& mutable_coeff(std::size_t i) { return coeffs_[i]; }

  // Index of the first nonzero coefficient; order() when the series is zero.
  std::size_t valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return i;
    return coeffs_.size();
  }

  bool is_zero() const { return valuation() == order(); }

  QSeries truncated(std::size_t new_order) const {
    if (new_order == 0 || new_order > order())
      throw std::domain_error("QSeries::truncated: bad order");
    return QSeries(var_, std::vector<Rational>(coeffs_.begin(),
                                               coeffs_.begin() + new_order));
  }

  QSeries with_var(const std::string& v) const { return QSeries(v, coeffs_); }

 private:
  std::string var_;
  std::vector<Rational> coeffs_;
};

namespace detail {

inline void require_same_var(const QSeries& a, const QSeries& b,
                             const char* op) {
  if (a.var() != b.var())
    throw std::domain_error(std::string(op) + ": variable mismatch '" +
                            a.var() + "' vs '" + b.var() + "'");
}

// Clears denominators: out[i] = a[i] * D with D = lcm of all denominators.
inline Integer scale_to_integers(const std::vector<Rational>& a,
                                 std::size_t n, std::vector<Integer>& out) {
  Integer den = 1;
  for (std::size_t i = 0; i < n; ++i)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), mpq_denref(a[i].get_mpq_t()));
  out.assign(n, Integer());
  for (std::size_t i = 0; i < n; ++i) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), den.get_mpz_t(),
                 mpq_denref(a[i].get_mpq_t()));
    mpz_mul(out[i].get_mpz_t(), q.get_mpz_t(), mpq_numref(a[i].get_mpq_t()));
  }
  return den;
}

}  // namespace detail

inline QSeries operator+(const QSeries& a, const QSeries& b) {
  detail::require_same_var(a, b, "add");
  std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + b[i];
  return QSeries(a.var(), std::move(c));
}

inline QSeries operator-(const QSeries& a, const QSeries& b) {
  detail::require_same_var(a, b, "sub");
  std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] - b[i];
  return QSeries(a.var(), std::move(c));
}

inline QSeries operator-(const QSeries& a) {
  std::vector<Rational> c(a.order());
  for (std::size_t i = 0; i < a.order(); ++i) c[i] = -a[i];
  return QSeries(a.var(), std::move(c));
}

inline QSeries operator*(const Rational& s, const QSeries& a) {
  std::vector<Rational> c(a.order());
  for (std::size_t i = 0; i < a.order(); ++i) c[i] = s * a[i];
  return QSeries(a.var(), std::move(c));
}

inline QSeries add_constant(const QSeries& a, const Rational& c) {
  std::vector<Rational> v = a.coeffs();
  v[0] += c;
  return QSeries(a.var(), std::move(v));
}

// Full convolution truncated at min order. Denominators are cleared once per
// operand so the inner loop runs on integers (mpq canonicalization per
// partial product is the cost driver at order ~200).
inline QSeries operator*(const QSeries& a, const QSeries& b) {
  detail::require_same_var(a, b, "mul");
  std::size_t n = std::min(a.order(), b.order());
  std::vector<Integer> ai, bi;
  Integer da = detail::scale_to_integers(a.coeffs(), n, ai);
  Integer db = detail::scale_to_integers(b.coeffs(), n, bi);
  std::vector<Integer> conv(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (ai[i] == 0) continue;
    for (std::size_t j = 0; j + i < n; ++j) {
      if (bi[j] == 0) continue;
      mpz_addmul(conv[i + j].get_mpz_t(), ai[i].get_mpz_t(),
                 bi[j].get_mpz_t());
    }
  }
  Integer den = da * db;
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = make_rational(conv[i], den);
  return QSeries(a.var(), std::move(c));
}

// Multiplicative inverse; requires a nonzero constant term.
inline QSeries invert(const QSeries& a) {
  if (a[0] == 0)
    throw std::domain_error("invert: constant term is zero");
  std::size_t n = a.order();
  std::vector<Rational> r(n);
  Rational lead = 1 / a[0];
  r[0] = lead;
  for (std::size_t k = 1; k < n; ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * r[k - j];
    r[k] = -acc * lead;
  }
  return QSeries(a.var(), std::move(r));
}

// outer(inner(x)); inner must have zero constant term. Horner evaluation.
inline QSeries compose(const QSeries& outer, const QSeries& inner) {
  if (inner[0] != 0)
    throw std::domain_error("compose: inner constant term must be zero");
  std::size_t n = std::min(outer.order(), inner.order());
  QSeries in = inner.truncated(n);
  QSeries res = QSeries::constant(in.var(), outer[n - 1], n);
  for (std::size_t k = n - 1; k-- > 0;) {
    res = res * in;
    res.mutable_coeff(0) += outer[k];
  }
  return res;
}

namespace detail {
inline std::string reverted_var(const std::string& v) {
  if (v == "q") return "t";
  if (v == "t") return "q";
  return v;
}
}  // namespace detail

// Compositional inverse of a series of valuation exactly 1, via Lagrange
// inversion: rev_n = (1/n) [x^{n-1}] (x/a(x))^n, with the powers of x/a(x)
// built incrementally.
inline QSeries revert(const QSeries& a) {
  std::size_t n = a.order();
  if (n < 2 || a[0] != 0 || a[1] == 0)
    throw std::domain_error("revert: series must have valuation exactly 1");
  std::vector<Rational> shifted(a.coeffs().begin() + 1, a.coeffs().end());
  QSeries u = invert(QSeries(a.var(), std::move(shifted)));  // x / a(x)
  QSeries upow = QSeries::constant(a.var(), 1, n);
  std::vector<Rational> r(n);
  for (std::size_t k = 1; k < n; ++k) {
    upow = upow * u;
    r[k] = upow[k - 1] / Rational(static_cast<long>(k));
  }
  return QSeries(detail::reverted_var(a.var()), std::move(r));
}

// q -> q^d; indices beyond the (preserved) order are dropped.
inline QSeries rescale_variable(const QSeries& a, unsigned long d) {
  if (d == 0) throw std::domain_error("rescale_variable: d must be positive");
  std::size_t n = a.order();
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i * d < n; ++i) c[i * d] = a[i];
  return QSeries(a.var(), std::move(c));
}

}  // namespace zeta3
