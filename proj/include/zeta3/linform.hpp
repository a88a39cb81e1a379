#pragma once

// The central pipeline: Eichler integral of F, the formal linear form
// E (f - zeta(3)) = A - zeta(3) B, recomposition in the Hauptmodul
// coordinate, and extraction of the approximant rows (a_n, b_n).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeta3/families.hpp"
#include "zeta3/modforms.hpp"
#include "zeta3/qseries.hpp"
#include "zeta3/rational.hpp"

namespace zeta3 {

// Two parameterizations of the affine E-family are in circulation:
//   basis    E = E1 + alpha * E0           (valid for every catalog level)
//   beukers  E = E_b (1 + alpha t_6)       (level 6 only; alpha = 0 is the
//                                           classical Apery sequence)
// They are related at level 6 by E_b(1 + a t_6) = E1 - ((5+a)/24) E0.
enum class EFamily { basis, beukers };

inline EFamily default_family(unsigned long N) {
  return N == 6 ? EFamily::beukers : EFamily::basis;
}

inline const char* family_name(EFamily f) {
  return f == EFamily::beukers ? "beukers" : "basis";
}

struct LinearFormSeries {
  QSeries A;  // rational part
  QSeries B;  // coefficient of -zeta(3)
  unsigned long level = 6;
  Rational alpha;
  EFamily family = EFamily::beukers;

  const std::string& coordinate() const { return A.var(); }
};

// Coefficient n of F divided by n^{k-1}; F must vanish at i oo.
inline QSeries eichler(const QSeries& F, unsigned k) {
  if (F[0] != 0)
    throw std::domain_error("eichler: series must have zero constant term");
  std::vector<Rational> c(F.order());
  for (std::size_t n = 1; n < F.order(); ++n)
    c[n] = F[n] / Rational(pow_integer(Integer(n), k - 1));
  return QSeries(F.var(), std::move(c));
}

inline LinearFormSeries linear_form_q(const QSeries& E, const QSeries& f,
                                      unsigned long level,
                                      const Rational& alpha,
                                      EFamily family) {
  if (E[0] != 1)
    throw std::domain_error("linear_form_q: E must have constant term 1");
  if (f[0] != 0)
    throw std::domain_error("linear_form_q: f must have constant term 0");
  return LinearFormSeries{E * f, E.truncated(std::min(E.order(), f.order())),
                          level, alpha, family};
}

// Change of local coordinate q -> t: compose A and B with the formal inverse
// of the Hauptmodul series.
inline LinearFormSeries to_hauptmodul(const LinearFormSeries& lfs,
                                      const QSeries& t_series) {
  if (lfs.coordinate() != "q")
    throw std::domain_error("to_hauptmodul: series already in t-coordinate");
  if (t_series.valuation() != 1 || t_series[1] != 1)
    throw std::domain_error(
        "to_hauptmodul: Hauptmodul series must have valuation 1 with leading "
        "coefficient 1");
  QSeries r = revert(t_series);  // q as a series in t
  return LinearFormSeries{compose(lfs.A, r), compose(lfs.B, r), lfs.level,
                          lfs.alpha, lfs.family};
}

struct ApproxRow {
  std::size_t n = 0;
  Rational a;
  Rational b;
  Rational ratio;          // a/b in lowest terms (0 when b = 0)
  Rational scaled_a;       // lcm(1..n)^3 * a
  std::size_t den_digits;  // decimal digits of den(ratio)
};

namespace detail {

inline EisensteinCombo family_member(unsigned long N, const Rational& alpha,
                                     EFamily family) {
  EFamilyBasis basis = solve_E_basis(N);
  if (family == EFamily::basis)
    return combo_linear(basis.E1, alpha, basis.E0);
  if (N != 6)
    throw std::domain_error(
        "family_member: the beukers parameterization is specific to level 6");
  // E_b (1 + alpha t_6) = E1 - ((5 + alpha)/24) E0
  return combo_linear(basis.E1, -(Rational(5) + alpha) / 24, basis.E0);
}

}  // namespace detail

// Internal q-order carries a guard beyond the requested t-order to absorb
// composition truncation.
constexpr std::size_t kPipelineGuard = 8;

// Full pipeline: F -> Eichler integral -> E-family member -> linear form in
// q -> t-coordinate. Returns the series pair with exact t-coefficients
// (a_n, b_n) for 0 <= n < order.
inline LinearFormSeries linear_form_t(unsigned long N, const Rational& alpha,
                                      std::size_t order, EFamily family) {
  if (order < 2) throw std::domain_error("linear_form_t: order must be >= 2");
  std::size_t qorder = order + kPipelineGuard;
  QSeries F = combo_to_series(solve_F(N, 4), qorder);
  QSeries f = eichler(F, 4);
  QSeries E = combo_to_series(detail::family_member(N, alpha, family), qorder);
  LinearFormSeries in_q = linear_form_q(E, f, N, alpha, family);
  QSeries t = hauptmodul_series(N, qorder);
  LinearFormSeries in_t = to_hauptmodul(in_q, t);
  return LinearFormSeries{in_t.A.truncated(order), in_t.B.truncated(order),
                          N, alpha, family};
}

inline std::vector<ApproxRow> rows_from(const LinearFormSeries& lfs) {
  if (lfs.coordinate() != "t")
    throw std::domain_error("rows_from: series must be in t-coordinate");
  std::vector<ApproxRow> rows(lfs.A.order());
  Integer lcm3 = 1;
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (n > 1) {
      Integer nz(static_cast<long>(n));
      mpz_lcm(lcm3.get_mpz_t(), lcm3.get_mpz_t(), nz.get_mpz_t());
    }
    ApproxRow& row = rows[n];
    row.n = n;
    row.a = lfs.A[n];
    row.b = lfs.B[n];
    row.ratio = row.b == 0 ? Rational(0) : Rational(row.a / row.b);
    row.scaled_a = Rational(pow_integer(lcm3, 3)) * row.a;
    row.den_digits = digit_count(Integer(row.ratio.get_den()));
  }
  return rows;
}

inline std::vector<ApproxRow> approximants(unsigned long N,
                                           const Rational& alpha,
                                           std::size_t order,
                                           std::optional<EFamily> family = {}) {
  EFamily fam = family.value_or(default_family(N));
  return rows_from(linear_form_t(N, alpha, order, fam));
}

struct IntegralityReport {
  bool all_pass = true;
  std::size_t first_violation = 0;  // row index, valid when !all_pass
  std::string detail;               // which condition failed
  Integer scale;                    // s in alpha = r/s
};

// Verifies s b_n^alpha in Z and lcm(1..n)^3 s a_n^alpha in Z for rows from
// the level-6 Theorem family with alpha = r/s.
inline IntegralityReport integrality_report(const std::vector<ApproxRow>& rows,
                                            const Rational& alpha) {
  IntegralityReport rep;
  rep.scale = alpha.get_den();
  Rational s(rep.scale);
  for (const ApproxRow& row : rows) {
    if (!is_integer(s * row.b)) {
      rep.all_pass = false;
      rep.first_violation = row.n;
      rep.detail = "s*b not integral at n=" + std::to_string(row.n);
      return rep;
    }
    if (!is_integer(s * row.scaled_a)) {
      rep.all_pass = false;
      rep.first_violation = row.n;
      rep.detail = "lcm^3*s*a not integral at n=" + std::to_string(row.n);
      return rep;
    }
  }
  return rep;
}

}  // namespace zeta3
