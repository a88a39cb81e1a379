#include "doctest.h"

#include <cmath>
#include <vector>

#include "zeta3/linform.hpp"
#include "zeta3/numerics.hpp"

using namespace zeta3;

namespace {

double dist(const BigFloat& a, double b) {
  return std::fabs(a.to_double() - b);
}

BigFloat pow10f(long e, mpfr_prec_t prec) {
  return pow_si(BigFloat::from_long(10, prec), e);
}

}  // namespace

TEST_CASE("zeta3 matches the reference value and is self-consistent") {
  BigFloat z = zeta3_value(10);
  CHECK(dist(z, 1.2020569031595943) < 1e-9);

  BigFloat z50 = zeta3_value(50);
  BigFloat z60 = zeta3_value(60);
  CHECK(abs(z50 - z60) < pow10f(-50, z60.prec()));

  // cross-check against an unrelated implementation
  BigFloat ref(digits_to_prec(60));
  mpfr_zeta_ui(ref.get(), 3, MPFR_RNDN);
  CHECK(abs(z60 - ref) < pow10f(-58, ref.prec()));

  CHECK_THROWS_AS(zeta3_value(5), std::domain_error);
}

TEST_CASE("zeta3 against the level-6 approximants") {
  std::vector<ApproxRow> rows = approximants(6, 0, 6);
  std::vector<MetricsRow> metrics = error_metrics(rows, 40);
  CHECK(metrics[5].err_pow10 == -15);  // |a_5/b_5 - zeta3| ~ 1e-15
  CHECK(metrics[2].err_pow10 == -6);
}

TEST_CASE("eval_eta at i") {
  mpfr_prec_t prec = digits_to_prec(40);
  BigComplex tau(BigFloat::from_long(0, prec), BigFloat::from_long(1, prec));
  BigComplex v = eval_eta(tau, 30);
  CHECK(dist(v.re, 0.7682254223260566) < 1e-14);
  CHECK(std::fabs(v.im.to_double()) < 1e-25);

  // two precisions agree
  BigComplex v2 = eval_eta(tau, 60);
  CHECK(abs(v.re - v2.re) < pow10f(-28, prec));

  CHECK_THROWS_AS(
      eval_eta(BigComplex(BigFloat::from_long(0, prec),
                          BigFloat::from_long(-1, prec)),
               20),
      std::domain_error);
}

TEST_CASE("fricke point values reproduce the observation table") {
  // t_6(i/sqrt 6) = (sqrt2 - 1)^4 to 40 digits
  BigFloat v6 = fricke_point_value(6, 50);
  mpfr_prec_t prec = digits_to_prec(60);
  BigFloat golden = pow_si(sqrt(BigFloat::from_long(2, prec)) -
                               BigFloat::from_long(1, prec),
                           4);
  CHECK(abs(v6 - golden) < pow10f(-40, prec));

  struct Row { unsigned long N; double value; };
  for (Row row : std::vector<Row>{{10, 0.0557}, {14, 0.0795}, {15, 0.0901},
                                  {21, 0.1224}, {26, 0.1385}, {35, 0.1878},
                                  {39, 0.1958}})
    CHECK(dist(fricke_point_value(row.N, 30), row.value) < 5e-4);
}

TEST_CASE("radius_estimate on a geometric series") {
  mpfr_prec_t prec = digits_to_prec(40);
  std::vector<BigFloat> mags;
  for (int n = 0; n < 64; ++n)
    mags.push_back(pow_si(BigFloat::from_long(2, prec), n));
  RadiusEstimate est = radius_estimate(mags);
  CHECK(dist(est.value, 0.5) < 1e-12);
  CHECK(est.residual.to_double() < 1e-12);

  mags.resize(16);
  CHECK_THROWS_AS(radius_estimate(mags), std::domain_error);
}

TEST_CASE("level 6 radii: linear form series and B series") {
  std::vector<ApproxRow> rows = approximants(6, 0, 80);
  RadiusEstimate product = radius_estimate(linear_form_values(rows, 300));
  CHECK(std::fabs(product.value.to_double() - 33.9706) / 33.9706 < 0.01);

  std::vector<Rational> b;
  for (const auto& row : rows) b.push_back(row.b);
  RadiusEstimate bseries = radius_estimate(coefficient_values(b, 300));
  CHECK(std::fabs(bseries.value.to_double() - 0.0294373) / 0.0294373 < 0.01);

  // the two level-6 branch values multiply to 1
  CHECK(std::fabs(product.value.to_double() * bseries.value.to_double() - 1.0) <
        0.01);
}

TEST_CASE("branch report flags sub-unit radii") {
  std::vector<ApproxRow> rows = approximants(21, 0, 72);
  BranchReport rep = branch_report(21, rows, 200);
  CHECK(rep.level == 21);
  CHECK(dist(rep.fricke_value, 0.1224) < 5e-4);
  CHECK(rep.below_one);
  CHECK_FALSE(rep.obstruction_pass);
  CHECK(rep.fricke_value < rep.branch_estimate);
}

TEST_CASE("level 6 obstruction passes") {
  std::vector<ApproxRow> rows = approximants(6, 0, 80);
  BranchReport rep = branch_report(6, rows, 300);
  CHECK(rep.obstruction_pass);
  CHECK_FALSE(rep.below_one);
  ObstructionReport obs = obstruction_report({rep});
  CHECK(obs.levels.size() == 1);
  CHECK(std::fabs(obs.e3 - 20.0855) < 1e-3);
  // lcm(1..n)^3 growth rate vs log10(e^3) = 1.3029
  CHECK(obs.lcm_cube_rate_199 > 1.25);
  CHECK(obs.lcm_cube_rate_199 < 1.45);
}

TEST_CASE("error_metrics") {
  std::vector<ApproxRow> rows = approximants(6, 0, 8);
  std::vector<MetricsRow> m = error_metrics(rows, 40);
  // n = 0: a_0/b_0 = 0, the error is zeta(3) itself
  CHECK(std::fabs(m[0].err_exponent + std::log10(1.2020569)) < 1e-6);
  CHECK(m[0].err_pow10 == 0);
  CHECK(m[0].quality == 0);  // denominator 1
  // error exponents grow ~3.06 per step
  for (std::size_t n = 3; n < 8; ++n)
    CHECK(m[n].err_exponent > m[n - 1].err_exponent + 2);
  CHECK(m[5].den_digits == 11);
  CHECK(m[5].den_log10 > 10.0);
  CHECK(m[5].den_log10 < 11.0);
}

TEST_CASE("error_metrics raises precision automatically") {
  std::vector<ApproxRow> rows = approximants(6, 0, 30);
  std::vector<MetricsRow> m = error_metrics({rows[29]}, 15);
  // err exponent ~ 88; 15 digits cannot resolve it
  CHECK(m[0].digits_used >= m[0].err_exponent + 20);
  CHECK(m[0].err_exponent > 85);
  CHECK(m[0].err_exponent < 95);
}

TEST_CASE("hecke functional equation at level 6") {
  mpfr_prec_t prec = digits_to_prec(60);
  double s6 = 1.0 / std::sqrt(6.0);
  std::vector<BigComplex> taus = {
      BigComplex::from_doubles(0.0, 1.1 * s6, prec),
      BigComplex::from_doubles(0.1, 0.95 * s6, prec),
  };
  HeckeReport rep = hecke_check(6, taus, 50, 120);
  CHECK(rep.max_residual < pow10f(-30, prec));
  CHECK(rep.samples.size() == 2);

  // Fricke fixed point: both sides coincide
  std::vector<BigComplex> fixed = {BigComplex::from_doubles(0.0, s6, prec)};
  HeckeReport repf = hecke_check(6, fixed, 50, 120);
  CHECK(repf.max_residual < pow10f(-44, prec));
}

TEST_CASE("hecke residual shrinks as the order grows") {
  mpfr_prec_t prec = digits_to_prec(60);
  double s10 = 1.0 / std::sqrt(10.0);
  std::vector<BigComplex> taus = {
      BigComplex::from_doubles(0.0, 0.9 * s10, prec)};
  HeckeReport low = hecke_check(10, taus, 50, 40);
  HeckeReport high = hecke_check(10, taus, 50, 80);
  CHECK(high.max_residual < low.max_residual);
  CHECK(low.max_residual < pow10f(-20, prec));
  CHECK(high.max_residual < pow10f(-30, prec));
}

TEST_CASE("hecke check rejects bad samples") {
  mpfr_prec_t prec = digits_to_prec(40);
  std::vector<BigComplex> lower = {BigComplex::from_doubles(0.0, -1.0, prec)};
  CHECK_THROWS_AS(hecke_check(6, lower, 30, 40), std::domain_error);
  // Im so small that |q| ~ 1 and 40 terms cannot reach 1e-8
  std::vector<BigComplex> tiny = {BigComplex::from_doubles(0.0, 0.001, prec)};
  CHECK_THROWS_WITH_AS(hecke_check(6, tiny, 30, 40),
                       doctest::Contains("does not converge"),
                       std::domain_error);
}
