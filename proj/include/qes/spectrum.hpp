// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "qes/series.hpp"

namespace qes {

/// Determinant of the (N+1)x(N+1) tridiagonal matrix with diagonal beta_n(E),
/// super-diagonal alpha_n and sub-diagonal gamma_n (continuant recurrence).
double characteristic_det(const PotentialSpec& spec, const ExpansionFamily& fam, double E, int N);

struct ArscottReport {
  bool ok;
  std::vector<int> violating;  // n in 1..N with alpha_{n-1} gamma_n <= 0
};

/// alpha_{n-1} gamma_n > 0 for all 1 <= n <= N (vacuously true for N = 0).
/// ArgumentError when the series does not terminate.
ArscottReport arscott_check(const PotentialSpec& spec, const ExpansionFamily& fam);

/// Eigenvalues, ascending, of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` (off[i] couples i and i+1), by Sturm-sequence
/// bisection inside the Gershgorin interval.
std::vector<double> sturm_eigenvalues(const std::vector<double>& diag, const std::vector<double>& off);

/// Number of eigenvalues strictly below x (Sturm count).
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x);

struct SpectrumResult {
  ExpansionFamily family;
  PotentialSpec spec;
  int N = 0;
  std::vector<double> energies;  // ascending, real only
  std::vector<SeriesSolution> solutions;
  bool arscott_ok = false;
  std::vector<int> arscott_violations;
  std::vector<std::pair<int, int>> degenerate_pairs;
  /// Characteristic roots with a non-negligible imaginary part. Never physical.
  std::vector<std::complex<double>> complex_roots;
};

/// All real roots of the characteristic determinant of a terminating family.
/// beta_n is affine in E with a common slope S, so the roots are E = -lambda/S
/// for the eigenvalues lambda of the E = 0 matrix. With the Arscott condition
/// the matrix is symmetrized and solved by Sturm bisection; without it all
/// N+1 eigenvalues come from a dense nonsymmetric solver, the real ones are
/// polished on the determinant and the rest reported in complex_roots.
/// ArgumentError when the series does not terminate.
SpectrumResult finite_spectrum(const PotentialSpec& spec, const ExpansionFamily& fam);

/// Continued fraction f(E) = beta_0 - alpha_0 gamma_1 / (beta_1 - alpha_1 gamma_2 / (...))
/// truncated to `depth` levels (depth 1 gives beta_0).
double continued_fraction(const PotentialSpec& spec, const ExpansionFamily& fam, double E, int depth);

struct InfiniteRoot {
  double E;
  int depth;
};

/// Root of the continued fraction inside [lo, hi], depth doubled until the root
/// moves by less than 1e-11. Brackets and bisection use the sign of the
/// truncated determinant (f times the minor without row 0), which shares the
/// zeros of f but not its poles. NoRootError when there is no root on the
/// bracket (a sign change of f at a pole does not count); ConvergenceError
/// past depth 10^5.
InfiniteRoot infinite_energy(const PotentialSpec& spec, const ExpansionFamily& fam, Interval bracket);

/// Default scan window [-(l+6)^2, (l+6)^2 (1 + 1/k^2)].
Interval default_energy_window(const PotentialSpec& spec);

/// Roots found by sampling the truncated determinant sign on the window
/// (400 points) and refining every sign change, ascending, at most max_count.
/// Two roots closer than one sample step can cancel and be missed.
std::vector<double> infinite_spectrum(const PotentialSpec& spec, const ExpansionFamily& fam,
                                      std::optional<Interval> window = std::nullopt, int max_count = 1000);

/// Same potential with l -> -l-5.
PotentialSpec symmetry_partner(const PotentialSpec& spec);

/// Family whose (l -> -l-5) spectrum coincides with that of `fam`.
ExpansionFamily symmetry_partner_family(PotentialKind kind, const ExpansionFamily& fam);

/// Closed-form energies known for the one- and two-term hypergeometric cases
/// (V1 bold and V2 bar families at l = -3/2 and l = -1/2). The two-term pair
/// is returned as complex numbers because the V2 discriminant can be negative.
std::optional<std::vector<std::complex<double>>> closed_form_energies(const PotentialSpec& spec,
                                                                      const ExpansionFamily& fam);

}  // namespace qes
