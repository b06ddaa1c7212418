// SPDX-License-Identifier: Apache-2.0

#include "qes/heun.hpp"

#include <cmath>
#include <string>

#include "qes/errors.hpp"

namespace qes {

HeunParams::HeunParams(double a_, double q_, double alpha_, double beta_, double gamma_,
                       double delta_, double epsilon_)
    : a(a_), q(q_), alpha(alpha_), beta(beta_), gamma(gamma_), delta(delta_), epsilon(epsilon_) {
  if (a == 0.0 || a == 1.0) throw ArgumentError("HeunParams: a must not be 0 or 1");
  const double expect = alpha + beta + 1.0 - gamma - delta;
  const double scale = 1.0 + std::abs(alpha) + std::abs(beta) + std::abs(gamma) + std::abs(delta);
  if (!(std::abs(expect - epsilon) <= 1e-12 * scale))
    throw ArgumentError("HeunParams: epsilon != alpha + beta + 1 - gamma - delta");
}

HeunParams HeunParams::derived(double a, double q, double alpha, double beta, double gamma,
                               double delta) {
  return HeunParams(a, q, alpha, beta, gamma, delta, alpha + beta + 1.0 - gamma - delta);
}

PotentialSpec make_spec(PotentialKind kind, double l, double k2) {
  if (!std::isfinite(l)) throw DomainError("coupling l must be finite");
  return PotentialSpec{kind, l, EllipticModulus::from_k2(k2)};
}

LClass classify_l(double l) {
  if (std::abs(l - std::round(l)) < 1e-9) return LClass::Integer;
  const double t = 2.0 * l;
  if (std::abs(t - std::round(t)) < 2e-9) return LClass::HalfOdd;
  return LClass::Generic;
}

double potential_value(const PotentialSpec& spec, double u) {
  const double k2 = spec.k.k2();
  const JacobiTriple j = jacobi(u, k2);
  const double L = coupling(spec.l);
  const double tail = -L + L * k2 * j.cn * j.cn / (j.dn * j.dn);
  if (spec.kind == PotentialKind::V1) {
    if (std::abs(j.cn) < 1e-14) throw SingularPointError("V1: cn u = 0 at u = " + std::to_string(u));
    return 2.0 * (1.0 - k2) / (j.cn * j.cn) + tail;
  }
  if (std::abs(j.sn) < 1e-14) throw SingularPointError("V2: sn u = 0 at u = " + std::to_string(u));
  return 2.0 / (j.sn * j.sn) + tail;
}

double printed_potential(const PotentialSpec& spec, double u) {
  const double k2 = spec.k.k2();
  const JacobiTriple j = jacobi(u, k2);
  const double L = coupling(spec.l);
  const double dn2 = j.dn * j.dn;
  if (spec.kind == PotentialKind::V1) {
    if (std::abs(j.sn) < 1e-14) throw SingularPointError("sn u = 0 at u = " + std::to_string(u));
    return 2.0 / (j.sn * j.sn) - (1.0 - k2) * L / dn2;
  }
  if (std::abs(j.cn) < 1e-14) throw SingularPointError("cn u = 0 at u = " + std::to_string(u));
  return (1.0 - k2) * (2.0 / (j.cn * j.cn) - L / dn2);
}

HeunParams darboux_params(const PotentialSpec& spec, double E) {
  const double l = spec.l;
  const double k2 = spec.k.k2();
  const double alpha = (l + 6.0) / 2.0;
  const double beta = (l + 5.0) / 2.0;
  const double eps = l + 3.5;
  if (spec.kind == PotentialKind::V1) {
    const double q = (l * l + 6.0 * l + 7.0) / 4.0 - (l * l + 5.0 * l + 2.0 + E) / (4.0 * k2);
    return HeunParams(spec.k.a(), q, alpha, beta, 0.5, 2.5, eps);
  }
  const double q = (l + 5.0) * (l + 5.0) / 4.0 - (E + 2.0 + l * l + 5.0 * l) / (4.0 * k2);
  return HeunParams(spec.k.a(), q, alpha, beta, 2.5, 0.5, eps);
}

Prefactor base_prefactor(const PotentialSpec& spec) {
  if (spec.kind == PotentialKind::V1) return {0.0, 2.0, spec.l + 3.0};
  return {2.0, 0.0, spec.l + 3.0};
}

HomotopicResult homotopic(int i, const HeunParams& p) {
  const double a = p.a, q = p.q, al = p.alpha, be = p.beta, ga = p.gamma, de = p.delta,
               ep = p.epsilon;
  switch (i) {
    case 1: return {p, {0, 0, 0}};
    case 2:
      return {HeunParams::derived(a, q - (ga - 1) * (de * a + ep), be - ga + 1, al - ga + 1, 2 - ga, de),
              {1 - ga, 0, 0}};
    case 3:
      return {HeunParams::derived(a, q - (de - 1) * ga * a, be - de + 1, al - de + 1, ga, 2 - de),
              {0, 1 - de, 0}};
    case 4:
      return {HeunParams::derived(a, q - (ga + de - 2) * a - (ga - 1) * ep, al - ga - de + 2,
                                  be - ga - de + 2, 2 - ga, 2 - de),
              {1 - ga, 1 - de, 0}};
    case 5:
      return {HeunParams::derived(a, q - ga * (al + be - ga - de), -al + ga + de, -be + ga + de, ga, de),
              {0, 0, 1 - ep}};
    case 6:
      return {HeunParams::derived(a, q - de * (ga - 1) * a - al - be + de + 1, -be + de + 1,
                                  -al + de + 1, 2 - ga, de),
              {1 - ga, 0, 1 - ep}};
    case 7:
      return {HeunParams::derived(a, q - ga * ((de - 1) * a + al + be - ga - de), -be + ga + 1,
                                  -al + ga + 1, ga, 2 - de),
              {0, 1 - de, 1 - ep}};
    case 8:
      return {HeunParams::derived(a, q - (ga + de - 2) * a - al - be + de + 1, 2 - al, 2 - be, 2 - ga,
                                  2 - de),
              {1 - ga, 1 - de, 1 - ep}};
    default: throw ArgumentError("homotopic: index must be 1..8, got " + std::to_string(i));
  }
}

HeunParams fractional_m49(const HeunParams& p) {
  return HeunParams(1.0 - p.a, p.alpha * p.beta - p.q, p.alpha, p.beta, p.delta, p.gamma, p.epsilon);
}

Prefactor family_prefactor(const PotentialSpec& spec, const ExpansionFamily& fam) {
  require_supported(spec.kind, fam);
  const HeunParams base = darboux_params(spec, 0.0);
  Prefactor p = base_prefactor(spec) + homotopic(fam.index, base).power.as_prefactor();
  // Euler-stored hypergeometric factors absorb (1 - z)^(-1/2).
  if (euler_stored(fam)) (fam.group == FamilyGroup::HyperBold ? p.p_sn : p.p_cn) -= 1.0;
  return p;
}

}  // namespace qes
