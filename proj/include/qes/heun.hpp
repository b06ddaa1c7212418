// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qes/family.hpp"
#include "qes/special_functions.hpp"

namespace qes {

/// Constants of the general Heun equation
///   H'' + (gamma/x + delta/(x-1) + epsilon/(x-a)) H' + (alpha beta x - q)/(x(x-1)(x-a)) H = 0
/// with epsilon = alpha + beta + 1 - gamma - delta. The constraint and a not in {0, 1}
/// are checked on every construction (ArgumentError).
struct HeunParams {
  double a;
  double q;
  double alpha;
  double beta;
  double gamma;
  double delta;
  double epsilon;

  HeunParams(double a, double q, double alpha, double beta, double gamma, double delta,
             double epsilon);

  /// Same, with epsilon derived from the constraint.
  static HeunParams derived(double a, double q, double alpha, double beta, double gamma,
                            double delta);
};

struct PotentialSpec {
  PotentialKind kind;
  double l;
  EllipticModulus k;
};

/// DomainError when k2 is outside (0, 1).
PotentialSpec make_spec(PotentialKind kind, double l, double k2);

/// psi(u) = sn^p_sn u * cn^p_cn u * dn^p_dn u * S(u).
struct Prefactor {
  double p_sn;
  double p_cn;
  double p_dn;

  Prefactor operator+(const Prefactor& o) const {
    return {p_sn + o.p_sn, p_cn + o.p_cn, p_dn + o.p_dn};
  }
};

/// Exponents of x^e0 (1-x)^e1 (1-x/a)^e2 attached by a homotopic transformation.
struct PowerDelta {
  double on_x;
  double on_one_minus_x;
  double on_one_minus_x_over_a;

  /// With x = sn^2, 1-x = cn^2, 1-x/a = dn^2.
  Prefactor as_prefactor() const {
    return {2.0 * on_x, 2.0 * on_one_minus_x, 2.0 * on_one_minus_x_over_a};
  }
};

struct HomotopicResult {
  HeunParams params;
  PowerDelta power;
};

enum class LClass { Integer, HalfOdd, Generic };

/// Tolerance 1e-9.
LClass classify_l(double l);

/// (l+2)(l+3), invariant under l -> -l-5.
inline double coupling(double l) { return (l + 2.0) * (l + 3.0); }

/// Potential in the Darboux form solved by the eigenfunctions:
///   V1: 2k'^2/cn^2 u - L + L k^2 cn^2 u/dn^2 u   (walls where cn u = 0)
///   V2: 2/sn^2 u - L + L k^2 cn^2 u/dn^2 u       (walls where sn u = 0)
/// with L = (l+2)(l+3). SingularPointError at a wall.
double potential_value(const PotentialSpec& spec, double u);

/// The two potentials written in the other common form,
///   2/sn^2 u - k'^2 L/dn^2 u   and   k'^2 (2/cn^2 u - L/dn^2 u),
/// for the V1 and V2 labels respectively. They coincide with the Darboux
/// forms above with the labels exchanged.
double printed_potential(const PotentialSpec& spec, double u);

/// Heun constants of the base substitution x = sn^2 u:
///   V1: (alpha, beta, gamma, delta) = ((l+6)/2, (l+5)/2, 1/2, 5/2),
///       q = (l^2+6l+7)/4 - (l^2+5l+2+E)/(4k^2)
///   V2: gamma = 5/2, delta = 1/2, q = (l+5)^2/4 - (E+2+l^2+5l)/(4k^2)
/// with a = 1/k^2, epsilon = l + 7/2.
HeunParams darboux_params(const PotentialSpec& spec, double E);

/// Base prefactor: V1 (0, 2, l+3), V2 (2, 0, l+3).
Prefactor base_prefactor(const PotentialSpec& spec);

/// Homotopic transformation T_i, i = 1..8. ArgumentError for other i.
HomotopicResult homotopic(int i, const HeunParams& p);

/// x -> 1 - x: (a, q; alpha, beta, gamma, delta) -> (1-a, alpha beta - q; alpha, beta, delta, gamma).
HeunParams fractional_m49(const HeunParams& p);

/// Full prefactor of an expansion family: base prefactor times the homotopic
/// powers. Families whose hypergeometric factor is stored in Euler-transformed
/// form (bold2, bold6, bar3, bar7) have the compensating half power removed.
/// ArgumentError for unsupported pairs.
Prefactor family_prefactor(const PotentialSpec& spec, const ExpansionFamily& fam);

}  // namespace qes
