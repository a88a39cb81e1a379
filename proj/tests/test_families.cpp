#include "doctest.h"

#include <map>
#include <vector>

#include "zeta3/families.hpp"

using namespace zeta3;

namespace {

EisensteinCombo combo_of(unsigned weight, unsigned long level,
                         std::vector<std::pair<unsigned long, Rational>> cs) {
  EisensteinCombo c;
  c.weight = weight;
  c.level = level;
  for (auto& [d, v] : cs) c.coeffs[d] = v;
  return c;
}

// Closed form for the four-divisor E-basis, derived from the pairing
// relations with divisors 1 < p < N/p < N:
//   E1: beta_p = p^2/(p^2 - N), beta_{N/p} = -(N/p^2) beta_p
//   E0: beta_1 = 1, beta_N = -N, beta_p = (N-1) p^2/(p^2 - N)
EFamilyBasis closed_form_basis(unsigned long N) {
  LevelData ld = level_data(N);
  unsigned long p = ld.divisors[1];
  Rational p2 = Rational(static_cast<long>(p * p));
  Rational nn = Rational(static_cast<long>(N));
  Rational e1p = p2 / (p2 - nn);
  Rational e0p = Rational(static_cast<long>(N - 1)) * p2 / (p2 - nn);
  EFamilyBasis basis;
  basis.E1 = combo_of(2, N, {{1, 0},
                             {p, e1p},
                             {N / p, -(nn / p2) * e1p},
                             {N, 0}});
  basis.E0 = combo_of(2, N, {{1, 1},
                             {p, e0p},
                             {N / p, -(nn / p2) * e0p},
                             {N, -nn}});
  return basis;
}

}  // namespace

TEST_CASE("solve_F level 6 matches the closed form") {
  EisensteinCombo f = solve_F(6, 4);
  CHECK(f.coeffs[1] == make_rational(1, 40));
  CHECK(f.coeffs[2] == make_rational(-28, 40));
  CHECK(f.coeffs[3] == make_rational(63, 40));
  CHECK(f.coeffs[6] == make_rational(-36, 40));
}

TEST_CASE("solve_F known coefficient tables") {
  EisensteinCombo f14 = solve_F(14, 4);
  CHECK(f14.coeffs[1] == make_rational(21, 1560));
  CHECK(f14.coeffs[2] == make_rational(-364, 1560));
  CHECK(f14.coeffs[7] == make_rational(4459, 1560));
  CHECK(f14.coeffs[14] == make_rational(-4116, 1560));

  EisensteinCombo f26 = solve_F(26, 4);
  CHECK(f26.coeffs[1] == make_rational(13, 1200));
  CHECK(f26.coeffs[2] == make_rational(-39, 220));
  CHECK(f26.coeffs[13] == make_rational(6591, 880));
  CHECK(f26.coeffs[26] == make_rational(-2197, 300));
}

TEST_CASE("solve_F q-expansions match the level tables") {
  struct Row {
    unsigned long N;
    Rational c1, c2, c3;
  };
  std::vector<Row> rows = {
      {6, Rational(6), Rational(-114), Rational(546)},
      {10, make_rational(35, 9), make_rational(-115, 3), make_rational(980, 9)},
      {14, make_rational(42, 13), make_rational(-350, 13),
       make_rational(1176, 13)},
      {15, make_rational(15, 7), make_rational(135, 7), Rational(-210)},
      {21, make_rational(7, 4), make_rational(63, 4), make_rational(-497, 4)},
      {26, make_rational(13, 5), make_rational(-1053, 55),
       make_rational(364, 5)},
      {35, make_rational(35, 34), make_rational(315, 34),
       make_rational(490, 17)},
      {39, make_rational(26, 19), make_rational(234, 19),
       make_rational(-1495, 19)},
  };
  for (const Row& row : rows) {
    QSeries s = combo_to_series(solve_F(row.N, 4), 4);
    CHECK(s[0] == 0);
    CHECK(s[1] == row.c1);
    CHECK(s[2] == row.c2);
    CHECK(s[3] == row.c3);
  }
}

TEST_CASE("solve_F validates its preconditions") {
  CHECK_THROWS_AS(solve_F(12, 4), std::domain_error);  // not squarefree
  CHECK_THROWS_AS(solve_F(30, 4), std::domain_error);  // 8 divisors, k = 4
  CHECK_THROWS_AS(solve_F(6, 6), std::domain_error);   // i^k != 1
  CHECK_THROWS_AS(solve_F(6, 5), std::domain_error);
}

TEST_CASE("solve_F generic weight satisfies the defining conditions") {
  // N = 30 has 8 divisors; k = 8 exercises the vanishing conditions.
  EisensteinCombo f = solve_F(30, 8);
  LevelData ld = level_data(30);
  Rational sum0, sum_k1;
  for (unsigned long d : ld.divisors) {
    sum0 += f.coeffs[d];
    sum_k1 += f.coeffs[d] / Rational(pow_integer(Integer(d), 7));
  }
  CHECK(sum0 == 0);
  CHECK(sum_k1 == bernoulli(8) / 8);
  for (unsigned l = 5; l <= 6; ++l) {
    Rational s;
    for (unsigned long d : ld.divisors)
      s += f.coeffs[d] / Rational(pow_integer(Integer(d), l));
    CHECK(s == 0);
  }
  for (unsigned long d : ld.divisors) {
    Rational expect = -make_rational(pow_integer(Integer(30), 4),
                                     pow_integer(Integer(d), 8)) *
                      f.coeffs[d];
    CHECK(f.coeffs[30 / d] == expect);
  }
}

TEST_CASE("solve_E_basis level 6") {
  EFamilyBasis b = solve_E_basis(6);
  CHECK(b.E0.coeffs[1] == 1);
  CHECK(b.E0.coeffs[2] == -10);
  CHECK(b.E0.coeffs[3] == 15);
  CHECK(b.E0.coeffs[6] == -6);
  CHECK(b.E1.coeffs[1] == 0);
  CHECK(b.E1.coeffs[2] == -2);
  CHECK(b.E1.coeffs[3] == 3);
  CHECK(b.E1.coeffs[6] == 0);
}

TEST_CASE("solve_E_basis published families") {
  EFamilyBasis b10 = solve_E_basis(10);
  CHECK(b10.E1.coeffs[2] == make_rational(-2, 3));
  CHECK(b10.E1.coeffs[5] == make_rational(5, 3));

  EFamilyBasis b26 = solve_E_basis(26);
  CHECK(b26.E1.coeffs[2] == make_rational(-2, 11));
  CHECK(b26.E1.coeffs[13] == make_rational(13, 11));

  EFamilyBasis b39 = solve_E_basis(39);
  CHECK(b39.E0.coeffs[3] == make_rational(-57, 5));
  CHECK(b39.E0.coeffs[13] == make_rational(741, 15));  // = 247/5 reduced
  CHECK(b39.E0.coeffs[39] == -39);
}

TEST_CASE("generic solver equals the closed-form oracle on all levels") {
  for (unsigned long N : {6UL, 10UL, 14UL, 15UL, 21UL, 26UL, 35UL, 39UL}) {
    EFamilyBasis got = solve_E_basis(N);
    EFamilyBasis want = closed_form_basis(N);
    CHECK(got.E0.coeffs == want.E0.coeffs);
    CHECK(got.E1.coeffs == want.E1.coeffs);

    // values at i oo
    Rational s0, s1;
    for (auto& [d, c] : got.E0.coeffs) s0 += c;
    for (auto& [d, c] : got.E1.coeffs) s1 += c;
    CHECK(s0 == 0);
    CHECK(s1 == 1);
  }
}

TEST_CASE("check_weight2_modularity") {
  EFamilyBasis b = solve_E_basis(6);
  CHECK(check_weight2_modularity(b.E0).modular);
  CHECK(check_weight2_modularity(b.E1).modular);
  for (auto& [d, r] : check_weight2_modularity(b.E0).fricke_residuals)
    CHECK(r == 0);

  EisensteinCombo bad = combo_of(2, 6, {{1, 1}, {2, 0}, {3, 0}, {6, 0}});
  Weight2Report rep = check_weight2_modularity(bad);
  CHECK_FALSE(rep.modular);
  CHECK(rep.sum_beta_over_d == 1);
  CHECK(rep.fricke_residuals[1] == 6);  // beta_6 + 6 beta_1

  EisensteinCombo wrong_weight = combo_of(4, 6, {{1, 1}});
  CHECK_THROWS_AS(check_weight2_modularity(wrong_weight), std::domain_error);
}

TEST_CASE("combo_to_series") {
  QSeries f6 = combo_to_series(solve_F(6, 4), 3);
  CHECK(f6[0] == 0);
  CHECK(f6[1] == 6);
  CHECK(f6[2] == -114);

  QSeries e1 = combo_to_series(solve_E_basis(6).E1, 3);
  CHECK(e1[0] == 1);
  CHECK(e1[1] == 0);
  CHECK(e1[2] == 48);

  EisensteinCombo zero = combo_of(2, 6, {{1, 0}, {2, 0}, {3, 0}, {6, 0}});
  CHECK(combo_to_series(zero, 5).is_zero());
}

TEST_CASE("combo_linear") {
  EFamilyBasis b = solve_E_basis(6);
  // E_b = E1 - (5/24) E0
  EisensteinCombo eb = combo_linear(b.E1, make_rational(-5, 24), b.E0);
  QSeries s = combo_to_series(eb, 8);
  QSeries direct = beukers_form(8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(s[i] == direct[i]);
}
