// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "qes/heun.hpp"

namespace qes {

/// Even/odd about u = 0 for V1, symmetric/antisymmetric about u = K for V2.
enum class Parity { Even, Odd };

struct ShootingOptions {
  double margin = 1e-3;  // wall offset, units of K
  double rtol = 1e-11;
  double step = 0.05;    // energy scan step
  std::optional<double> e_min;  // default: minimum of the potential
  std::optional<double> e_max;  // default: e_min + (l+6)^2 (2 + 1/k^2) + 50
  double e_tol = 1e-10;
};

struct ShootingResult {
  std::vector<double> energies;
  bool complete;  // false when fewer than max_count were found in the window
};

/// Eigenvalues of psi'' + (E - V(u)) psi = 0 that uses nothing but
/// potential_value and an adaptive Runge-Kutta-Fehlberg 7(8) integrator.
///
/// V1 lives on (-K, K) with walls at +-K where psi ~ t^2 (t = K - u); the
/// solution started at u = 0 with the requested parity is matched at K/2 to
/// the one started at the wall, through the normalized Wronskian. V2 lives on
/// (0, 2K) with a wall at 0; the solution started there is tested at u = K
/// with psi'(K) = 0 (even) or psi(K) = 0 (odd). Wall starts use
/// psi = t^2 (1 + c2 t^2) with c2 = (w0 - E)/10, w0 the constant term of the
/// potential at the wall.
ShootingResult shooting_spectrum(const PotentialSpec& spec, Parity parity, int max_count,
                                 const ShootingOptions& opt = {});

/// Matching function whose zeros are the eigenvalues (exposed for tests).
double shooting_mismatch(const PotentialSpec& spec, Parity parity, double E,
                         const ShootingOptions& opt = {});

}  // namespace qes
