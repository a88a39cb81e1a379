#pragma once

// Linear-system solvers for the weight-4 form F_N and the affine weight-two
// family E_{N,alpha} on Gamma_0(N)*, plus the weight-two modularity check.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeta3/modforms.hpp"
#include "zeta3/qseries.hpp"
#include "zeta3/rational.hpp"

namespace zeta3 {

// A formal combination sum_d coeffs[d] * E_k(d tau); keys are exactly the
// divisors of the level.
struct EisensteinCombo {
  unsigned weight = 0;
  unsigned long level = 1;
  std::map<unsigned long, Rational> coeffs;
};

inline EisensteinCombo combo_linear(const EisensteinCombo& a,
                                    const Rational& s,
                                    const EisensteinCombo& b) {
  if (a.weight != b.weight || a.level != b.level)
    throw std::domain_error("combo_linear: weight/level mismatch");
  EisensteinCombo out = a;
  for (const auto& [d, c] : b.coeffs) out.coeffs[d] += s * c;
  return out;
}

inline QSeries combo_to_series(const EisensteinCombo& combo,
                               std::size_t order) {
  QSeries acc = QSeries::zero("q", order);
  for (const auto& [d, c] : combo.coeffs) {
    if (c == 0) continue;
    acc = acc + c * eisenstein(combo.weight, d, order);
  }
  return acc;
}

namespace detail {

// Exact Gaussian elimination with partial (first nonzero) pivoting on an
// n x (n+1) augmented matrix. Returns the solution vector.
inline std::vector<Rational> solve_linear_system(
    std::vector<std::vector<Rational>> m) {
  std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n)
      throw std::runtime_error("solve_linear_system: singular matrix");
    std::swap(m[col], m[piv]);
    Rational inv = 1 / m[col][col];
    for (std::size_t j = col; j <= n; ++j) m[col][j] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational f = m[row][col];
      for (std::size_t j = col; j <= n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

inline LevelData require_squarefree_with_divisors(unsigned long N,
                                                  std::size_t count,
                                                  const char* who) {
  LevelData ld = level_data(N);
  if (!ld.squarefree)
    throw std::domain_error(std::string(who) + ": level " +
                            std::to_string(N) + " is not squarefree");
  if (ld.divisor_count() != count)
    throw std::domain_error(std::string(who) + ": level " +
                            std::to_string(N) + " has " +
                            std::to_string(ld.divisor_count()) +
                            " divisors, need " + std::to_string(count));
  return ld;
}

}  // namespace detail

// Unique alpha vector with sum alpha_d = 0, sum alpha_d / d^{k-1} = B_k/k,
// the Fricke pairing alpha_{N/d} = -(i^k N^{k/2}/d^k) alpha_d, and the
// vanishing conditions sum alpha_d / d^l = 0 for (k+2)/2 <= l <= k-2.
inline EisensteinCombo solve_F(unsigned long N, unsigned k) {
  if (k < 4 || k % 2 != 0)
    throw std::domain_error("solve_F: weight must be even and >= 4");
  if (k % 4 != 0)
    throw std::domain_error(
        "solve_F: weight with i^k != 1 not supported (k mod 4 != 0)");
  LevelData ld = detail::require_squarefree_with_divisors(N, k, "solve_F");
  const auto& divs = ld.divisors;
  std::size_t n = divs.size();

  std::vector<std::vector<Rational>> m;
  // sum alpha_d = 0
  {
    std::vector<Rational> row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = 1;
    m.push_back(std::move(row));
  }
  // sum alpha_d / d^{k-1} = B_k / k
  {
    std::vector<Rational> row(n + 1);
    for (std::size_t i = 0; i < n; ++i)
      row[i] = make_rational(Integer(1), pow_integer(Integer(divs[i]), k - 1));
    row[n] = bernoulli(k) / Rational(static_cast<long>(k));
    m.push_back(std::move(row));
  }
  // alpha_{N/d} + (N^{k/2}/d^k) alpha_d = 0 for divisor pairs d < N/d
  for (std::size_t i = 0; i < n; ++i) {
    unsigned long d = divs[i];
    unsigned long paired = N / d;
    if (d >= paired) continue;
    std::size_t j = 0;
    while (divs[j] != paired) ++j;
    std::vector<Rational> row(n + 1);
    row[i] = make_rational(pow_integer(Integer(N), k / 2),
                           pow_integer(Integer(d), k));
    row[j] = 1;
    m.push_back(std::move(row));
  }
  // sum alpha_d / d^l = 0 for (k+2)/2 <= l <= k-2 (empty when k = 4)
  for (unsigned l = (k + 2) / 2; l + 2 <= k; ++l) {
    std::vector<Rational> row(n + 1);
    for (std::size_t i = 0; i < n; ++i)
      row[i] = make_rational(Integer(1), pow_integer(Integer(divs[i]), l));
    m.push_back(std::move(row));
  }

  std::vector<Rational> x = detail::solve_linear_system(std::move(m));
  EisensteinCombo combo;
  combo.weight = k;
  combo.level = N;
  for (std::size_t i = 0; i < n; ++i) combo.coeffs[divs[i]] = x[i];
  return combo;
}

struct Weight2Report {
  bool modular = false;             // sum beta_d / d == 0 exactly
  Rational sum_beta_over_d;         // the Lemma 2 sum
  // beta_{N/d} + (N/d^2) beta_d per divisor pair, zero iff Fricke-paired
  std::map<unsigned long, Rational> fricke_residuals;
};

inline Weight2Report check_weight2_modularity(const EisensteinCombo& combo) {
  if (combo.weight != 2)
    throw std::domain_error("check_weight2_modularity: weight must be 2");
  Weight2Report rep;
  for (const auto& [d, c] : combo.coeffs)
    rep.sum_beta_over_d += c / Rational(static_cast<long>(d));
  rep.modular = rep.sum_beta_over_d == 0;
  for (const auto& [d, c] : combo.coeffs) {
    unsigned long paired = combo.level / d;
    if (d > paired) continue;
    Rational beta_paired;
    auto it = combo.coeffs.find(paired);
    if (it != combo.coeffs.end()) beta_paired = it->second;
    rep.fricke_residuals[d] =
        beta_paired + make_rational(Integer(combo.level),
                                    Integer(d) * Integer(d)) *
                          c;
  }
  return rep;
}

// The affine weight-two family E1 + alpha * E0, with E1 pinned by beta_1 = 0
// (value 1 at i oo) and E0 pinned by beta_1 = 1 (value 0 at i oo).
struct EFamilyBasis {
  EisensteinCombo E0;
  EisensteinCombo E1;
};

namespace detail {

inline EisensteinCombo solve_E_pinned(const LevelData& ld,
                                      const Rational& beta1,
                                      const Rational& value_at_infinity) {
  const auto& divs = ld.divisors;
  std::size_t n = divs.size();
  std::vector<std::vector<Rational>> m;
  // pin beta_1
  {
    std::vector<Rational> row(n + 1);
    row[0] = 1;
    row[n] = beta1;
    m.push_back(std::move(row));
  }
  // value at i oo: sum beta_d
  {
    std::vector<Rational> row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = 1;
    row[n] = value_at_infinity;
    m.push_back(std::move(row));
  }
  // Fricke pairing beta_{N/d} = -(N/d^2) beta_d for pairs d < N/d
  for (std::size_t i = 0; i < n; ++i) {
    unsigned long d = divs[i];
    unsigned long paired = ld.N / d;
    if (d >= paired) continue;
    std::size_t j = 0;
    while (divs[j] != paired) ++j;
    std::vector<Rational> row(n + 1);
    row[i] = make_rational(Integer(ld.N), Integer(d) * Integer(d));
    row[j] = 1;
    m.push_back(std::move(row));
  }
  std::vector<Rational> x = solve_linear_system(std::move(m));
  EisensteinCombo combo;
  combo.weight = 2;
  combo.level = ld.N;
  for (std::size_t i = 0; i < n; ++i) combo.coeffs[divs[i]] = x[i];

  Weight2Report rep = check_weight2_modularity(combo);
  if (!rep.modular)
    throw std::runtime_error("solve_E_pinned: solution violates the "
                             "weight-two modularity condition");
  return combo;
}

}  // namespace detail

inline EFamilyBasis solve_E_basis(unsigned long N) {
  LevelData ld =
      detail::require_squarefree_with_divisors(N, 4, "solve_E_basis");
  EFamilyBasis basis;
  basis.E1 = detail::solve_E_pinned(ld, 0, 1);
  basis.E0 = detail::solve_E_pinned(ld, 1, 0);
  return basis;
}

}  // namespace zeta3
