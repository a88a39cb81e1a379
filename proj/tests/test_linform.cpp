#include "doctest.h"

#include <utility>
#include <vector>

#include "zeta3/linform.hpp"

using namespace zeta3;

namespace {

// Forward Apery recurrence, the independent oracle for the level-6 pipeline:
// (n+1)^3 x_{n+1} = (34n^3+51n^2+27n+5) x_n - n^3 x_{n-1}
std::pair<std::vector<Rational>, std::vector<Rational>> apery_oracle(
    std::size_t count) {
  std::vector<Rational> a{0, 6}, b{1, 5};
  for (std::size_t n = 1; n + 1 < count; ++n) {
    Rational v(static_cast<long>(34 * n * n * n + 51 * n * n + 27 * n + 5));
    Rational n3(static_cast<long>(n * n * n));
    Rational np1_3(static_cast<long>((n + 1) * (n + 1) * (n + 1)));
    a.push_back((v * a[n] - n3 * a[n - 1]) / np1_3);
    b.push_back((v * b[n] - n3 * b[n - 1]) / np1_3);
  }
  return {a, b};
}

}  // namespace

TEST_CASE("eichler integral") {
  QSeries f6 = combo_to_series(solve_F(6, 4), 6);
  QSeries f = eichler(f6, 4);
  CHECK(f[0] == 0);
  CHECK(f[1] == 6);
  CHECK(f[2] == f6[2] / 8);
  CHECK(f[3] == f6[3] / 27);

  CHECK(eichler(QSeries::zero("q", 5), 4).is_zero());
  CHECK_THROWS_AS(eichler(QSeries::constant("q", 1, 4), 4),
                  std::domain_error);
}

TEST_CASE("linear_form_q") {
  QSeries e = QSeries::constant("q", 1, 4);
  QSeries f = QSeries::identity("q", 4);
  LinearFormSeries lf = linear_form_q(e, f, 6, 0, EFamily::beukers);
  CHECK(lf.A[1] == 1);
  CHECK(lf.A[0] == 0);
  CHECK(lf.B[0] == 1);
  CHECK(lf.coordinate() == "q");

  // B is the input E verbatim
  QSeries eb = beukers_form(10);
  QSeries fe = eichler(combo_to_series(solve_F(6, 4), 10), 4);
  LinearFormSeries lf6 = linear_form_q(eb, fe, 6, 0, EFamily::beukers);
  for (std::size_t i = 0; i < 10; ++i) CHECK(lf6.B[i] == eb[i]);
  CHECK(lf6.A[1] == 6);

  CHECK_THROWS_AS(linear_form_q(f, f, 6, 0, EFamily::beukers),
                  std::domain_error);
}

TEST_CASE("to_hauptmodul with identity coordinate is a relabel") {
  QSeries e = QSeries::constant("q", 1, 5);
  QSeries f = QSeries::identity("q", 5);
  LinearFormSeries lf = linear_form_q(e, f, 6, 0, EFamily::beukers);
  LinearFormSeries in_t = to_hauptmodul(lf, QSeries::identity("q", 5));
  CHECK(in_t.coordinate() == "t");
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(in_t.A[i] == lf.A[i]);
    CHECK(in_t.B[i] == lf.B[i]);
  }
  CHECK_THROWS_AS(to_hauptmodul(in_t, QSeries::identity("q", 5)),
                  std::domain_error);
}

TEST_CASE("level 6 pipeline recovers the Apery sequences") {
  auto [a_oracle, b_oracle] = apery_oracle(24);
  std::vector<ApproxRow> rows = approximants(6, 0, 24);
  REQUIRE(rows.size() == 24);
  CHECK(rows[0].a == 0);
  CHECK(rows[0].b == 1);
  for (std::size_t n = 0; n < 24; ++n) {
    CHECK(rows[n].a == a_oracle[n]);
    CHECK(rows[n].b == b_oracle[n]);
  }
  CHECK(rows[1].b == 5);
  CHECK(rows[2].b == 73);
  CHECK(rows[3].b == 1445);
  CHECK(rows[4].b == 33001);
  CHECK(rows[2].ratio == make_rational(351, 292));
}

TEST_CASE("published approximants for shifted alpha") {
  std::vector<ApproxRow> r0 = approximants(6, 0, 6);
  CHECK(r0[5].ratio == parse_rational("35441662103/29484180000"));

  std::vector<ApproxRow> r1 = approximants(6, 1, 6);
  CHECK(r1[5].ratio == parse_rational("6144958163/5112036000"));

  std::vector<ApproxRow> rm5 = approximants(6, -5, 4);
  CHECK(rm5[3].ratio == parse_rational("2921/2430"));
}

TEST_CASE("alpha-shift identity at level 6") {
  std::vector<ApproxRow> base = approximants(6, 0, 16);
  for (Rational alpha :
       {Rational(1), Rational(-2), Rational(100), make_rational(1, 2)}) {
    std::vector<ApproxRow> shifted = approximants(6, alpha, 16);
    CHECK(shifted[0].a == base[0].a);
    CHECK(shifted[0].b == base[0].b);
    for (std::size_t n = 1; n < 16; ++n) {
      CHECK(shifted[n].a == base[n].a + alpha * base[n - 1].a);
      CHECK(shifted[n].b == base[n].b + alpha * base[n - 1].b);
    }
  }
}

TEST_CASE("basis parameterization at level 6 is the -(5+alpha)/24 member") {
  std::vector<ApproxRow> base = approximants(6, 0, 12);
  std::vector<ApproxRow> basis0 = approximants(6, 0, 12, EFamily::basis);
  // E1 = E_b (1 - 5 t6): rows are the shift by -5
  for (std::size_t n = 1; n < 12; ++n) {
    CHECK(basis0[n].b == base[n].b - 5 * base[n - 1].b);
    CHECK(basis0[n].a == base[n].a - 5 * base[n - 1].a);
  }
  CHECK(basis0[1].b == 0);  // 5 - 5
  CHECK_THROWS_AS(approximants(10, 0, 8, EFamily::beukers), std::domain_error);
}

TEST_CASE("proposition identities in series form") {
  const std::size_t M = 50;
  QSeries eb = beukers_form(M);
  QSeries t6 = hauptmodul_series(6, M);
  EFamilyBasis basis = solve_E_basis(6);
  QSeries e0 = combo_to_series(basis.E0, M);
  QSeries e1 = combo_to_series(basis.E1, M);

  QSeries lhs1 = eb * t6;
  QSeries rhs1 = make_rational(-1, 24) * e0;
  QSeries lhs2 = eb * add_constant(Rational(-5) * t6, 1);
  for (std::size_t i = 0; i < M; ++i) {
    CHECK(lhs1[i] == rhs1[i]);
    CHECK(lhs2[i] == e1[i]);
  }

  // Moebius corollary: -(1/24) E0/E1 = t6 / (1 - 5 t6)
  QSeries lhsM = make_rational(-1, 24) * (e0 * invert(e1));
  QSeries rhsM = t6 * invert(add_constant(Rational(-5) * t6, 1));
  for (std::size_t i = 0; i < M; ++i) CHECK(lhsM[i] == rhsM[i]);
}

TEST_CASE("other catalog levels produce finite rows") {
  for (unsigned long N : {10UL, 35UL}) {
    std::vector<ApproxRow> rows = approximants(N, 0, 7);
    CHECK(rows[0].a == 0);
    CHECK(rows[0].b == 1);
    CHECK(rows[5].b != 0);
  }
  // default family for non-6 levels is the basis parameterization
  std::vector<ApproxRow> r0 = approximants(10, 0, 7);
  std::vector<ApproxRow> r0b = approximants(10, 0, 7, EFamily::basis);
  for (std::size_t n = 0; n < 7; ++n) CHECK(r0[n].b == r0b[n].b);
}

TEST_CASE("integrality_report") {
  std::vector<ApproxRow> rows = approximants(6, 0, 21);
  IntegralityReport rep = integrality_report(rows, 0);
  CHECK(rep.all_pass);
  CHECK(rep.scale == 1);
  for (const ApproxRow& row : rows) CHECK(is_integer(row.b));

  std::vector<ApproxRow> half = approximants(6, make_rational(1, 2), 21);
  IntegralityReport rep2 = integrality_report(half, make_rational(1, 2));
  CHECK(rep2.all_pass);
  CHECK(rep2.scale == 2);

  // n = 0 row passes trivially
  IntegralityReport rep3 = integrality_report({rows[0]}, 0);
  CHECK(rep3.all_pass);
}

TEST_CASE("row metadata") {
  std::vector<ApproxRow> rows = approximants(6, 0, 6);
  CHECK(rows[2].den_digits == 3);  // 351/292
  CHECK(rows[5].den_digits == 11);
  CHECK(rows[2].scaled_a == rows[2].a * 8);  // lcm(1..2)^3
  CHECK(rows[5].scaled_a == rows[5].a * Rational(Integer(60) * 60 * 60));
}
