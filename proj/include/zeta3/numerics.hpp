#pragma once

// Arbitrary-precision numeric layer: zeta(3), eta evaluation on the upper
// half-plane, Hauptmodul values at the Fricke fixed point, radius-of-
// convergence estimation, error/denominator metrics, the Hecke functional-
// equation check, and the obstruction report R_N vs e^3.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeta3/bigfloat.hpp"
#include "zeta3/families.hpp"
#include "zeta3/linform.hpp"
#include "zeta3/modforms.hpp"
#include "zeta3/qseries.hpp"
#include "zeta3/rational.hpp"

namespace zeta3 {

// zeta(3) = (5/2) sum_{n>=1} (-1)^{n-1} / (n^3 binom(2n,n)). The terms decay
// like 4^{-n}, so the tail after the first omitted term is bounded by that
// term; iteration stops once it drops below the target precision.
inline BigFloat zeta3_value(long digits) {
  if (digits < 10) throw std::domain_error("zeta3: digits must be >= 10");
  mpfr_prec_t prec = digits_to_prec(digits + 10);
  BigFloat acc(prec);
  Rational term;
  for (unsigned long n = 1;; ++n) {
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), 2 * n, n);
    Integer den = pow_integer(Integer(n), 3) * binom;
    BigFloat t = BigFloat::from_rational(make_rational(Integer(1), den), prec);
    if (mpfr_cmp_d(t.get(), 0.0) != 0 &&
        mpfr_get_exp(t.get()) < -static_cast<long>(prec)) {
      break;
    }
    if (n % 2 == 1)
      mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
    else
      mpfr_sub(acc.get(), acc.get(), t.get(), MPFR_RNDN);
  }
  mpfr_mul_ui(acc.get(), acc.get(), 5, MPFR_RNDN);
  mpfr_div_ui(acc.get(), acc.get(), 2, MPFR_RNDN);
  return acc;
}

// eta(tau) = q^{1/24} prod_{n>=1} (1 - q^n), q = e^{2 pi i tau}; the product
// is truncated once |q|^n / (1 - |q|) falls below the precision target.
inline BigComplex eval_eta(const BigComplex& tau, long digits) {
  if (!(tau.im.sign() > 0))
    throw std::domain_error("eval_eta: Im(tau) must be positive");
  mpfr_prec_t prec = digits_to_prec(digits + 10);
  BigFloat two_pi = BigFloat::from_long(2, prec) * BigFloat::pi(prec);
  BigComplex two_pi_i_tau(-(two_pi * tau.im), two_pi * tau.re);
  BigComplex q = cexp(two_pi_i_tau);
  BigFloat qabs = abs(q);
  long target_exp = -static_cast<long>(prec) - 8;
  BigComplex prod(BigFloat::from_long(1, prec), BigFloat::from_long(0, prec));
  BigComplex qn = q;
  for (unsigned long n = 1;; ++n) {
    prod = prod - prod * qn;
    // remaining factors perturb by at most ~|q|^{n+1}/(1-|q|)
    BigFloat bound = pow_si(qabs, static_cast<long>(n + 1)) /
                     (BigFloat::from_long(1, prec) - qabs);
    if (!bound.is_zero() && mpfr_get_exp(bound.get()) < target_exp) break;
    qn = qn * q;
  }
  BigComplex prefactor =
      cexp(BigComplex(two_pi_i_tau.re / BigFloat::from_long(24, prec),
                      two_pi_i_tau.im / BigFloat::from_long(24, prec)));
  return prefactor * prod;
}

inline BigComplex eval_eta_quotient(const EtaQuotient& eq,
                                    const BigComplex& tau, long digits) {
  mpfr_prec_t prec = digits_to_prec(digits + 10);
  BigComplex acc(BigFloat::from_long(1, prec), BigFloat::from_long(0, prec));
  for (const auto& f : eq.factors) {
    BigComplex scaled(BigFloat::from_long(static_cast<long>(f.scale), prec) * tau.re,
                      BigFloat::from_long(static_cast<long>(f.scale), prec) * tau.im);
    acc = acc * cpow_si(eval_eta(scaled, digits), f.exponent);
  }
  return acc;
}

inline BigComplex eval_hauptmodul(unsigned long N, const BigComplex& tau,
                                  long digits) {
  return eval_eta_quotient(hauptmodul(N).quotient, tau, digits);
}

// t_N at the Fricke fixed point i/sqrt(N); real on the imaginary axis.
inline BigFloat fricke_point_value(unsigned long N, long digits) {
  mpfr_prec_t prec = digits_to_prec(digits + 10);
  BigFloat im = BigFloat::from_long(1, prec) /
                sqrt(BigFloat::from_long(static_cast<long>(N), prec));
  BigComplex v =
      eval_hauptmodul(N, BigComplex(BigFloat::from_long(0, prec), im), digits);
  return v.re;
}

struct RadiusEstimate {
  BigFloat value;     // extrapolated ratio limit as 1/n -> 0
  BigFloat residual;  // rms of the linear fit residuals
  std::size_t points = 0;
  // "ratio" when the plain Domb-Sykes ratios settle; "hadamard" when the
  // pair-robust quadratic estimator had to take over
  std::string method = "ratio";
};

namespace detail {

// Least-squares line through (1/n, y_n) over the last ceil(K/2) points;
// returns {intercept, rms residual, points used}.
inline RadiusEstimate fit_in_reciprocal_n(
    const std::vector<std::pair<std::size_t, BigFloat>>& pts,
    mpfr_prec_t prec) {
  std::size_t k = (pts.size() + 1) / 2;
  std::size_t begin = pts.size() - k;
  BigFloat sx(prec), sy(prec), sxx(prec), sxy(prec);
  for (std::size_t i = begin; i < pts.size(); ++i) {
    BigFloat x = BigFloat::from_long(1, prec) /
                 BigFloat::from_long(static_cast<long>(pts[i].first), prec);
    const BigFloat& y = pts[i].second;
    sx = sx + x;
    sy = sy + y;
    sxx = sxx + x * x;
    sxy = sxy + x * y;
  }
  BigFloat count = BigFloat::from_long(static_cast<long>(k), prec);
  BigFloat slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  BigFloat intercept = (sy - slope * sx) / count;
  BigFloat rss(prec);
  for (std::size_t i = begin; i < pts.size(); ++i) {
    BigFloat x = BigFloat::from_long(1, prec) /
                 BigFloat::from_long(static_cast<long>(pts[i].first), prec);
    BigFloat r = pts[i].second - (intercept + slope * x);
    rss = rss + r * r;
  }
  return RadiusEstimate{intercept, sqrt(rss / count), k};
}

}  // namespace detail

// Radius of convergence from (signed) coefficient values. Primary estimator
// is the Domb-Sykes ratio sequence r_n = |c_{n-1}/c_n| extrapolated linearly
// in 1/n. When the ratios oscillate (a conjugate pair of singularities, so
// the plain ratios never settle), the quadratic estimator
//   h_n = sqrt(|D_{n-1}/D_n|),  D_n = c_{n+1} c_{n-1} - c_n^2
// is smooth for a modulus-r pair and is extrapolated the same way; the fit
// residual picks the winner.
inline RadiusEstimate radius_estimate(const std::vector<BigFloat>& values) {
  std::size_t nonzero_tail = 0;
  for (std::size_t i = values.size(); i-- > 0 && !values[i].is_zero();)
    ++nonzero_tail;
  if (nonzero_tail < 32)
    throw std::domain_error(
        "radius_estimate: need at least 32 nonzero trailing coefficients");
  mpfr_prec_t prec = values.back().prec();
  std::size_t first = values.size() - nonzero_tail;

  std::vector<std::pair<std::size_t, BigFloat>> ratios;
  for (std::size_t n = first + 1; n < values.size(); ++n)
    ratios.emplace_back(n, abs(values[n - 1] / values[n]));
  RadiusEstimate plain = detail::fit_in_reciprocal_n(ratios, prec);
  plain.method = "ratio";

  std::vector<std::pair<std::size_t, BigFloat>> hadamard;
  for (std::size_t n = first + 2; n + 1 < values.size(); ++n) {
    BigFloat dn_prev =
        values[n] * values[n - 2] - values[n - 1] * values[n - 1];
    BigFloat dn = values[n + 1] * values[n - 1] - values[n] * values[n];
    if (dn.is_zero()) continue;
    hadamard.emplace_back(n, sqrt(abs(dn_prev / dn)));
  }
  RadiusEstimate quad = plain;
  if (hadamard.size() >= 16) {
    quad = detail::fit_in_reciprocal_n(hadamard, prec);
    quad.method = "hadamard";
  }

  BigFloat plain_rel = plain.residual / abs(plain.value);
  BigFloat quad_rel = quad.residual / abs(quad.value);
  RadiusEstimate best = plain_rel < quad_rel ? plain : quad;
  BigFloat best_rel = plain_rel < quad_rel ? plain_rel : quad_rel;

  // Several singularities sharing the circle defeat both ratio estimators.
  // Fit log|c_n| ~ -n log R + g log n + const by least squares; the cosine
  // noise averages out over the window.
  if (best_rel > BigFloat::from_double(1e-3, prec)) {
    std::size_t lo = first + nonzero_tail / 2;
    double sx = 0, sy = 0, sl = 0, sxx = 0, sxl = 0, sll = 0, sxy = 0,
           sly = 0, count = 0;
    for (std::size_t n = lo; n < values.size(); ++n) {
      if (values[n].is_zero()) continue;
      double x = static_cast<double>(n);
      double l = std::log(static_cast<double>(n));
      double y = log10(abs(values[n])).to_double();
      sx += x; sl += l; sy += y;
      sxx += x * x; sxl += x * l; sll += l * l;
      sxy += x * y; sly += l * y;
      count += 1;
    }
    // normal equations for y = p*x + q*l + r
    double m[3][4] = {{sxx, sxl, sx, sxy},
                      {sxl, sll, sl, sly},
                      {sx, sl, count, sy}};
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      while (piv < 3 && std::fabs(m[piv][col]) < 1e-12) ++piv;
      if (piv == 3) return best;
      std::swap(m[col], m[piv]);
      for (int row = 0; row < 3; ++row) {
        if (row == col) continue;
        double f = m[row][col] / m[col][col];
        for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
      }
    }
    double slope = m[0][3] / m[0][0];
    RadiusEstimate logfit;
    logfit.method = "logfit";
    logfit.value = BigFloat::from_double(std::pow(10.0, -slope), prec);
    double rss = 0;
    double q = m[1][3] / m[1][1], r = m[2][3] / m[2][2];
    for (std::size_t n = lo; n < values.size(); ++n) {
      if (values[n].is_zero()) continue;
      double y = log10(abs(values[n])).to_double();
      double fit = slope * n + q * std::log(static_cast<double>(n)) + r;
      rss += (y - fit) * (y - fit);
    }
    logfit.residual = BigFloat::from_double(std::sqrt(rss / count), prec);
    logfit.points = static_cast<std::size_t>(count);
    return logfit;
  }
  return best;
}

// Signed values a_n - zeta(3) b_n per row. Signs matter to the
// oscillation-robust radius estimator. The linear form can cancel almost
// all digits of a_n and b_n (at level 6, |a - zeta3 b| ~ 1/|b|), so the
// working precision is raised to twice the largest operand size; the digits
// argument is a floor.
inline std::vector<BigFloat> linear_form_values(
    const std::vector<ApproxRow>& rows, long digits) {
  std::size_t operand = 1;
  for (const ApproxRow& row : rows) {
    operand = std::max(operand, digit_count(Integer(row.a.get_num())));
    operand = std::max(operand, digit_count(Integer(row.a.get_den())));
    operand = std::max(operand, digit_count(Integer(row.b.get_num())));
  }
  long needed = std::max(digits, 2 * static_cast<long>(operand) + 60);
  mpfr_prec_t prec = digits_to_prec(needed + 10);
  BigFloat z3 = zeta3_value(needed);
  std::vector<BigFloat> vals;
  vals.reserve(rows.size());
  for (const ApproxRow& row : rows) {
    BigFloat a = BigFloat::from_rational(row.a, prec);
    BigFloat b = BigFloat::from_rational(row.b, prec);
    vals.push_back(a - z3 * b);
  }
  return vals;
}

inline std::vector<BigFloat> coefficient_values(
    const std::vector<Rational>& coeffs, long digits) {
  mpfr_prec_t prec = digits_to_prec(digits + 10);
  std::vector<BigFloat> vals;
  vals.reserve(coeffs.size());
  for (const Rational& c : coeffs)
    vals.push_back(BigFloat::from_rational(c, prec));
  return vals;
}

struct MetricsRow {
  std::size_t n = 0;
  double err_exponent = 0;   // E_n = -log10 |a_n/b_n - zeta3|
  double err_mantissa = 0;   // |a_n/b_n - zeta3| = mantissa * 10^{-ceil...}
  long err_pow10 = 0;        // floor(log10 |a_n/b_n - zeta3|)
  double den_log10 = 0;      // D_n = log10 den(a_n/b_n)
  std::size_t den_digits = 0;
  double quality = 0;        // Q_n = E_n / D_n
  long digits_used = 0;
};

// E_n, D_n, Q_n per row. Raises the working precision automatically until
// the zeta(3) rounding error cannot dominate (digits >= E_n + 20).
inline std::vector<MetricsRow> error_metrics(const std::vector<ApproxRow>& rows,
                                             long digits) {
  std::vector<MetricsRow> out;
  out.reserve(rows.size());
  for (const ApproxRow& row : rows) {
    long used = std::max(digits, 30L);
    for (;;) {
      mpfr_prec_t prec = digits_to_prec(used + 10);
      BigFloat z3 = zeta3_value(used);
      BigFloat delta = abs(BigFloat::from_rational(row.ratio, prec) - z3);
      if (delta.is_zero()) {
        // a_0/b_0 = 0 gives delta = zeta3; only exact coincidence lands here
        used *= 2;
        if (used > 1000000)
          throw std::runtime_error("error_metrics: ratio equals zeta(3)?");
        continue;
      }
      BigFloat e = -log10(delta);
      double e_d = e.to_double();
      if (e_d + 20 > static_cast<double>(used)) {
        used = static_cast<long>(e_d) + 40;
        continue;
      }
      MetricsRow m;
      m.n = row.n;
      m.digits_used = used;
      m.err_exponent = e_d;
      // delta = mantissa * 10^{err_pow10} with mantissa in [1, 10)
      m.err_pow10 = static_cast<long>(std::floor(-e_d));
      BigFloat scale = pow_si(BigFloat::from_long(10, prec), -m.err_pow10);
      m.err_mantissa = (delta * scale).to_double();
      Integer den(row.ratio.get_den());
      m.den_digits = digit_count(den);
      m.den_log10 = log10(BigFloat::from_integer(den, prec)).to_double();
      m.quality = m.den_log10 > 0 ? m.err_exponent / m.den_log10 : 0;
      out.push_back(m);
      break;
    }
  }
  return out;
}

struct HeckeSample {
  BigComplex tau;
  BigFloat residual;
};

struct HeckeReport {
  BigFloat max_residual;
  std::vector<HeckeSample> samples;
  std::size_t order = 0;
  long digits = 0;
};

namespace detail {

inline BigComplex eval_eichler_series(const std::vector<Rational>& coeffs,
                                      const BigComplex& q, long digits,
                                      const std::string& label) {
  mpfr_prec_t prec = digits_to_prec(digits + 10);
  BigFloat qabs = abs(q);
  // Truncation tail: |sum_{n>=M} c_n q^n| with |c_n| = |F_n|/n^3 growing
  // polynomially. The residual is allowed to be truncation-dominated (that
  // is what makes it shrink as the order grows), but a sample whose tail
  // bound cannot even reach 1e-8 at this order gives a meaningless value.
  BigFloat tail = pow_si(qabs, static_cast<long>(coeffs.size())) *
                  BigFloat::from_double(static_cast<double>(coeffs.size()) *
                                            coeffs.size() * coeffs.size(),
                                        prec);
  if (tail > pow_si(BigFloat::from_long(10, prec), -8))
    throw std::domain_error("hecke_check: sample " + label +
                            " does not converge at this series order");
  BigComplex acc{BigFloat(prec), BigFloat(prec)};
  for (std::size_t n = coeffs.size(); n-- > 1;) {
    acc = acc * q;
    if (coeffs[n] != 0) {
      BigFloat c = BigFloat::from_rational(coeffs[n], prec);
      acc.re = acc.re + c;
    }
  }
  return acc * q;  // series starts at n = 1
}

}  // namespace detail

// Evaluates h = f - zeta(3) from the q-series of F_N and returns the maximal
// residual |h(tau) - (-i sqrt(N) tau)^2 h(-1/(N tau))| over the samples.
inline HeckeReport hecke_check(unsigned long N,
                               const std::vector<BigComplex>& taus,
                               long digits, std::size_t order) {
  mpfr_prec_t prec = digits_to_prec(digits + 10);
  QSeries F = combo_to_series(solve_F(N, 4), order);
  std::vector<Rational> eich(order);
  for (std::size_t n = 1; n < order; ++n)
    eich[n] = F[n] / Rational(pow_integer(Integer(n), 3));
  BigFloat z3 = zeta3_value(digits);
  BigFloat two_pi = BigFloat::from_long(2, prec) * BigFloat::pi(prec);
  BigFloat n_f = BigFloat::from_long(static_cast<long>(N), prec);

  HeckeReport rep;
  rep.order = order;
  rep.digits = digits;
  rep.max_residual = BigFloat(prec);
  int index = 0;
  for (const BigComplex& tau : taus) {
    ++index;
    if (!(tau.im.sign() > 0))
      throw std::domain_error("hecke_check: sample " + std::to_string(index) +
                              " has Im(tau) <= 0");
    std::string label = std::to_string(index);
    BigComplex minus_one(BigFloat::from_long(-1, prec), BigFloat(prec));
    BigComplex tau2 = minus_one / (n_f * tau);

    auto q_at = [&](const BigComplex& t) {
      return cexp(BigComplex(-(two_pi * t.im), two_pi * t.re));
    };
    BigComplex f1 = detail::eval_eichler_series(eich, q_at(tau), digits, label);
    BigComplex f2 = detail::eval_eichler_series(eich, q_at(tau2), digits, label);
    BigComplex h1(f1.re - z3, f1.im);
    BigComplex h2(f2.re - z3, f2.im);
    // h(tau) = -N tau^2 h(-1/(N tau))
    BigComplex resid = h1 + n_f * (tau * tau * h2);
    HeckeSample sample{tau, abs(resid)};
    if (sample.residual > rep.max_residual) rep.max_residual = sample.residual;
    rep.samples.push_back(std::move(sample));
  }
  return rep;
}

struct BranchReport {
  unsigned long level = 0;
  BigFloat fricke_value;     // t_N(i/sqrt N)
  BigFloat branch_estimate;  // radius of the linear-form series in t
  BigFloat residual;         // extrapolation fit residual
  std::size_t points = 0;
  std::size_t coeffs_used = 0;
  bool obstruction_pass = false;  // branch_estimate > e^3
  bool below_one = false;         // no exponential decay at all
};

inline BigFloat e_cubed(long digits) {
  mpfr_prec_t prec = digits_to_prec(digits + 10);
  return exp(BigFloat::from_long(3, prec));
}

inline BranchReport branch_report(unsigned long N,
                                  const std::vector<ApproxRow>& rows,
                                  long digits) {
  BranchReport rep;
  rep.level = N;
  rep.fricke_value = fricke_point_value(N, digits);
  RadiusEstimate est = radius_estimate(linear_form_values(rows, digits));
  rep.branch_estimate = est.value;
  rep.residual = est.residual;
  rep.points = est.points;
  rep.coeffs_used = rows.size();
  BigFloat e3 = e_cubed(digits);
  rep.obstruction_pass = rep.branch_estimate > e3;
  rep.below_one =
      rep.branch_estimate < BigFloat::from_long(1, rep.branch_estimate.prec());
  return rep;
}

struct ObstructionReport {
  std::vector<BranchReport> levels;
  double e3 = 0;
  double lcm_cube_rate_199 = 0;  // 3 log10 lcm(1..199) / 199, vs log10(e^3)
};

inline ObstructionReport obstruction_report(
    const std::vector<BranchReport>& reports) {
  ObstructionReport rep;
  rep.levels = reports;
  rep.e3 = std::exp(3.0);
  BigFloat l = log10(BigFloat::from_integer(lcm_upto(199), digits_to_prec(40)));
  rep.lcm_cube_rate_199 = 3.0 * l.to_double() / 199.0;
  return rep;
}

}  // namespace zeta3
