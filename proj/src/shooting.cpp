// SPDX-License-Identifier: Apache-2.0

// Independent oracle: depends on the potential and the elliptic functions only.

#include "qes/shooting.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qes/errors.hpp"

namespace qes {

namespace {

using State = std::array<double, 2>;
namespace ode = boost::numeric::odeint;

State integrate(const PotentialSpec& spec, double E, State y, double from, double to, double rtol) {
  const auto rhs = [&](const State& s, State& d, double u) {
    d[0] = s[1];
    d[1] = (potential_value(spec, u) - E) * s[0];
  };
  auto stepper = ode::make_controlled(1e-300, rtol, ode::runge_kutta_fehlberg78<State>());
  const double h0 = (to - from) / 64.0;
  ode::integrate_adaptive(stepper, rhs, y, from, to, h0);
  return y;
}

double wall_constant(const PotentialSpec& spec) {
  const double k2 = spec.k.k2();
  const double L = coupling(spec.l);
  if (spec.kind == PotentialKind::V1) return -2.0 * (2.0 * k2 - 1.0) / 3.0 - L;
  return 2.0 * (1.0 + k2) / 3.0 - L + L * k2;
}

// psi = t^2 (1 + c2 t^2) and d psi/dt.
State wall_start(const PotentialSpec& spec, double E, double t) {
  const double c2 = (wall_constant(spec) - E) / 10.0;
  return {t * t * (1.0 + c2 * t * t), 2.0 * t + 4.0 * c2 * t * t * t};
}

}  // namespace

double shooting_mismatch(const PotentialSpec& spec, Parity parity, double E, const ShootingOptions& opt) {
  const double K = complete_K(spec.k);
  const double d = opt.margin * K;
  if (spec.kind == PotentialKind::V1) {
    const State left0 = parity == Parity::Even ? State{1.0, 0.0} : State{0.0, 1.0};
    const State L = integrate(spec, E, left0, 0.0, 0.5 * K, opt.rtol);
    State r0 = wall_start(spec, E, d);
    r0[1] = -r0[1];  // t = K - u
    const State R = integrate(spec, E, r0, K - d, 0.5 * K, opt.rtol);
    const double w = L[0] * R[1] - L[1] * R[0];
    return w / std::sqrt((L[0] * L[0] + L[1] * L[1]) * (R[0] * R[0] + R[1] * R[1]));
  }
  const State y = integrate(spec, E, wall_start(spec, E, d), d, K, opt.rtol);
  const double norm = std::sqrt(y[0] * y[0] + y[1] * y[1]);
  return (parity == Parity::Even ? y[1] : y[0]) / norm;
}

ShootingResult shooting_spectrum(const PotentialSpec& spec, Parity parity, int max_count,
                                 const ShootingOptions& opt) {
  if (max_count < 1) throw ArgumentError("shooting_spectrum: max_count must be >= 1");
  const double K = complete_K(spec.k);
  double e_lo = 0.0;
  if (opt.e_min) {
    e_lo = *opt.e_min;
  } else {
    e_lo = std::numeric_limits<double>::infinity();
    const double lo = spec.kind == PotentialKind::V1 ? -K : 0.0;
    const double hi = spec.kind == PotentialKind::V1 ? K : 2.0 * K;
    for (int i = 1; i < 2000; ++i) e_lo = std::min(e_lo, potential_value(spec, lo + (hi - lo) * i / 2000.0));
  }
  const double e_hi = opt.e_max ? *opt.e_max
                                : e_lo + (spec.l + 6) * (spec.l + 6) * (2.0 + spec.k.a()) + 50.0;

  ShootingResult res{{}, false};
  const auto f = [&](double E) { return shooting_mismatch(spec, parity, E, opt); };
  double a = e_lo;
  double fa = f(a);
  while (a < e_hi && static_cast<int>(res.energies.size()) < max_count) {
    const double b = a + opt.step;
    const double fb = f(b);
    if ((fa < 0.0) != (fb < 0.0)) {
      double x = a, y = b, fx = fa;
      while (y - x > opt.e_tol) {
        const double m = 0.5 * (x + y);
        const double fm = f(m);
        if ((fm < 0.0) == (fx < 0.0)) {
          x = m;
          fx = fm;
        } else {
          y = m;
        }
      }
      res.energies.push_back(0.5 * (x + y));
    }
    a = b;
    fa = fb;
  }
  res.complete = static_cast<int>(res.energies.size()) >= max_count;
  return res;
}

}  // namespace qes
