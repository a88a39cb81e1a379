#pragma once

// Recurrence and operator algebra: Apery recurrence residuals, the shifted
// recurrence (P_n, Q_n, R_n), the Picard-Fuchs operator in D = t d/dt form,
// and its gauge transform under B -> (1 + alpha t) B.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeta3/qseries.hpp"
#include "zeta3/rational.hpp"

namespace zeta3 {

// Dense univariate polynomial over Rational, trailing zeros trimmed.
struct Poly {
  std::vector<Rational> c;  // c[i] is the coefficient of x^i
  std::string var = "t";

  Poly() = default;
  Poly(std::vector<Rational> coeffs, std::string v = "t")
      : c(std::move(coeffs)), var(std::move(v)) {
    trim();
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  // Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(c.size()) - 1; }

  const Rational& coeff(std::size_t i) const {
    static const Rational zero(0);
    return i < c.size() ? c[i] : zero;
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }
};

inline Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Poly(std::move(c), a.var);
}

inline Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return Poly(std::move(c), a.var);
}

inline Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly({}, a.var);
  std::vector<Rational> c(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return Poly(std::move(c), a.var);
}

inline Poly operator*(const Rational& s, const Poly& a) {
  std::vector<Rational> c(a.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a.c[i];
  return Poly(std::move(c), a.var);
}

inline bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

// V_n = 34n^3 + 51n^2 + 27n + 5
inline Poly apery_v_poly() {
  return Poly({Rational(5), Rational(27), Rational(51), Rational(34)}, "n");
}

// (n+1)^3 s_{n+1} - V_n s_n + n^3 s_{n-1}, exact; seq must cover indices
// n-1, n, n+1.
inline Rational apery_residual(const std::vector<Rational>& seq,
                               std::size_t n) {
  if (n == 0 || n + 1 >= seq.size())
    throw std::domain_error("apery_residual: index out of range");
  Rational np1 = Rational(pow_integer(Integer(static_cast<long>(n + 1)), 3));
  Rational n3 = Rational(pow_integer(Integer(static_cast<long>(n)), 3));
  return np1 * seq[n + 1] - apery_v_poly().eval(Rational(static_cast<long>(n))) * seq[n] +
         n3 * seq[n - 1];
}

// U_n = alpha^2 (n+1)^3 + alpha V_n + n^3, as a polynomial in n.
inline Poly shifted_u_poly(const Rational& alpha) {
  Poly np1_cubed({Rational(1), Rational(3), Rational(3), Rational(1)}, "n");
  Poly n_cubed({Rational(0), Rational(0), Rational(0), Rational(1)}, "n");
  Poly v = apery_v_poly();
  return alpha * alpha * np1_cubed + alpha * v + n_cubed;
}

struct ShiftedCoeffPolys {
  Poly P, Q, R;  // polynomials in n, degree 6
};

// Coefficients of the second-order recurrence P_n c_{n+2} + Q_n c_{n+1}
// + R_n c_n = 0 satisfied by c_n = b_n + alpha b_{n-1}, expanded in n:
//   P_n = alpha (n+2)^3 U_n
//   Q_n = (n+1)^3 (U_n + alpha^2 U_{n+1}) - U_n U_{n+1}
//   R_n = alpha n^3 U_{n+1}
// The degree-6 leading factor alpha (alpha^2 + 34 alpha + 1) has no rational
// zeros besides alpha = 0, so the degree never degenerates here.
inline ShiftedCoeffPolys shifted_coeff_polys(const Rational& alpha) {
  if (alpha == 0)
    throw std::domain_error("shifted_coeff_polys: alpha must be nonzero");
  Poly u = shifted_u_poly(alpha);
  // U_{n+1}: substitute n -> n+1
  Poly shift({Rational(1), Rational(1)}, "n");  // n + 1
  Poly u_next({Rational(0)}, "n");
  {
    Poly pw({Rational(1)}, "n");
    u_next = Poly({}, "n");
    for (std::size_t i = 0; i < u.c.size(); ++i) {
      u_next = u_next + u.c[i] * pw;
      pw = pw * shift;
    }
  }
  Poly np1_cubed({Rational(1), Rational(3), Rational(3), Rational(1)}, "n");
  Poly np2_cubed({Rational(8), Rational(12), Rational(6), Rational(1)}, "n");
  Poly n_cubed({Rational(0), Rational(0), Rational(0), Rational(1)}, "n");
  ShiftedCoeffPolys out;
  out.P = alpha * (np2_cubed * u);
  out.Q = np1_cubed * (u + alpha * alpha * u_next) - u * u_next;
  out.R = alpha * (n_cubed * u_next);
  return out;
}

struct ShiftedCoeffs {
  Rational P, Q, R;
};

inline ShiftedCoeffs shifted_coeffs(const Rational& alpha, std::size_t n) {
  ShiftedCoeffPolys polys = shifted_coeff_polys(alpha);
  Rational nn(static_cast<long>(n));
  return ShiftedCoeffs{polys.P.eval(nn), polys.Q.eval(nn), polys.R.eval(nn)};
}

// Order-3 operator sum_i A[i](t) D^i with D = t d/dt.
struct OperatorCoeffs {
  std::array<Poly, 4> A;  // A[i] multiplies D^i

  long max_degree() const {
    long deg = 0;
    for (const Poly& p : A) deg = std::max(deg, p.degree());
    return deg;
  }
};

// L = B3 D^3 + B2 D^2 + B1 D + B0 annihilating the Apery generating series:
//   B3 = 1 - 34t + t^2, B2 = -51t + 3t^2, B1 = -27t + 3t^2, B0 = -5t + t^2.
inline OperatorCoeffs picard_fuchs() {
  OperatorCoeffs op;
  op.A[3] = Poly({Rational(1), Rational(-34), Rational(1)});
  op.A[2] = Poly({Rational(0), Rational(-51), Rational(3)});
  op.A[1] = Poly({Rational(0), Rational(-27), Rational(3)});
  op.A[0] = Poly({Rational(0), Rational(-5), Rational(1)});
  return op;
}

// Gauge transform: if L annihilates B(t), the returned operator annihilates
// (1 + alpha t) B(t). With w = 1 + alpha t:
//   A3 = w^3 B3
//   A2 = w^2 (-3 alpha t B3 + w B2)
//   A1 = w (-3 alpha t (1 - alpha t) B3 - 2 alpha t w B2 + w^2 B1)
//   A0 = -alpha t (1 - 4 alpha t + alpha^2 t^2) B3
//        - alpha t w (1 - alpha t) B2 - alpha t w^2 B1 + w^3 B0
inline OperatorCoeffs transform_operator(const Rational& alpha) {
  OperatorCoeffs b = picard_fuchs();
  Poly w({Rational(1), alpha});
  Poly at({Rational(0), alpha});
  Poly one({Rational(1)});
  Poly w2 = w * w;
  Poly w3 = w2 * w;
  OperatorCoeffs op;
  op.A[3] = w3 * b.A[3];
  op.A[2] = w2 * (Rational(-3) * (at * b.A[3]) + w * b.A[2]);
  op.A[1] = w * (Rational(-3) * (at * (one - at) * b.A[3]) -
                 Rational(2) * (at * w * b.A[2]) + w2 * b.A[1]);
  Poly theta0 = one - Rational(4) * at + at * at;  // 1 - 4 alpha t + (alpha t)^2
  op.A[0] = Rational(-1) * (at * theta0 * b.A[3]) -
            at * w * (one - at) * b.A[2] - at * w2 * b.A[1] + w3 * b.A[0];
  return op;
}

// D = t d/dt acting coefficient-wise: coefficient n multiplies by n.
inline QSeries theta_derivative(const QSeries& s) {
  std::vector<Rational> c(s.order());
  for (std::size_t n = 1; n < s.order(); ++n)
    c[n] = Rational(static_cast<long>(n)) * s[n];
  return QSeries(s.var(), std::move(c));
}

inline QSeries poly_times_series(const Poly& p, const QSeries& s) {
  QSeries acc = QSeries::zero(s.var(), s.order());
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    if (p.c[i] == 0) continue;
    std::vector<Rational> shifted(s.order());
    for (std::size_t n = 0; n + i < s.order(); ++n)
      shifted[n + i] = p.c[i] * s[n];
    acc = acc + QSeries(s.var(), std::move(shifted));
  }
  return acc;
}

// sum_i A[i](t) D^i s, truncated to order(s) - max_degree (the window whose
// coefficients are unaffected by the input truncation).
inline QSeries apply_operator(const OperatorCoeffs& op, const QSeries& s) {
  QSeries acc = poly_times_series(op.A[0], s);
  QSeries d = s;
  for (std::size_t i = 1; i < 4; ++i) {
    d = theta_derivative(d);
    acc = acc + poly_times_series(op.A[i], d);
  }
  std::size_t window = s.order() - static_cast<std::size_t>(op.max_degree());
  return acc.truncated(window);
}

}  // namespace zeta3
