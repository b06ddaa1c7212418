// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "qes/series.hpp"
#include "qes/shooting.hpp"

namespace qes {

struct ResidualReport {
  std::vector<double> grid;
  double max_rel_residual;
  double l2_rel_residual;
  double excluded_margin;  // distance of the outermost stencil point from the domain ends, units of K
};

/// Open interval on which the eigenfunction of a family solves the ODE: the
/// family domain minus walls and the kink point of the hypergeometric groups.
Interval residual_domain(const SeriesSolution& sol);

/// r(u) = psi'' + (E - V(u)) psi with a 5-point central second difference,
/// h = |domain| / (8 n_grid), on n_grid points spaced evenly in the residual
/// domain shrunk by 1e-3 K + 2h at both ends.
///   max_rel = max|r| / (max|psi| (1 + |E| + max|V|))
///   l2_rel  = rms(r) / (rms(psi) (1 + |E| + max|V|))
/// ArgumentError for n_grid < 16.
ResidualReport ode_residual(const SeriesSolution& sol, int n_grid);

/// max |a(u)/a(u*) - b(u)/b(u*)| on n interior points of [lo, hi], u* = K/2.
double normalized_max_deviation(const SeriesSolution& a, const SeriesSolution& b, Interval dom, int n = 32);

/// max |a(u) - c b(u)| / max|a| with c fitted at u* = K/2 (proportionality test).
double proportionality_defect(const SeriesSolution& a, const SeriesSolution& b, Interval dom, int n = 32);

struct EquivalenceCheck {
  std::string name;
  double max_deviation;
  double tolerance;
  bool passed;
};

struct EquivalenceReport {
  std::vector<EquivalenceCheck> checks;
  bool all_passed() const;
};

/// Identities between expansions that must agree, evaluated on a 32-point grid
/// with psi(K/2) = 1:
///  - every terminating family at l against its partner at -l-5 (energies and
///    eigenfunctions),
///  - for non-terminating l, the lowest power-series root of family 5 against
///    family 1 (and 6/2 for V1, 7/3 for V2) at the same energy,
///  - Euler-stored hypergeometric factors against their literal forms.
EquivalenceReport equivalence_suite(const PotentialSpec& spec);

/// Literal (pre-Euler) evaluation of the Euler-stored families:
/// prefactor with the extra sn or cn power and F~ with c - a - b = -1/2.
double evaluate_literal(const SeriesSolution& sol, double u);

}  // namespace qes
