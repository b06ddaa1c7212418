// SPDX-License-Identifier: Apache-2.0

#include "qes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qes/errors.hpp"
#include "qes/spectrum.hpp"

namespace qes {

Interval residual_domain(const SeriesSolution& sol) { return family_domain(sol.spec, sol.family); }

ResidualReport ode_residual(const SeriesSolution& sol, int n_grid) {
  if (n_grid < 16) throw ArgumentError("ode_residual: n_grid must be >= 16");
  const Interval dom = residual_domain(sol);
  const double K = complete_K(sol.spec.k);
  const double width = dom.hi - dom.lo;
  const double h = width / (8.0 * n_grid);
  const double margin = 1e-3 * K + 2.0 * h;
  const double lo = dom.lo + margin;
  const double hi = dom.hi - margin;

  ResidualReport rep;
  rep.excluded_margin = 1e-3;
  rep.grid.resize(n_grid);
  std::vector<double> r(n_grid), psi(n_grid);
  double vmax = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    const double u = lo + (hi - lo) * i / (n_grid - 1);
    rep.grid[i] = u;
    const double p0 = evaluate(sol, u);
    const double d2 = (-evaluate(sol, u + 2 * h) + 16 * evaluate(sol, u + h) - 30 * p0 +
                       16 * evaluate(sol, u - h) - evaluate(sol, u - 2 * h)) /
                      (12 * h * h);
    const double V = potential_value(sol.spec, u);
    vmax = std::max(vmax, std::abs(V));
    psi[i] = p0;
    r[i] = d2 + (sol.E - V) * p0;
  }
  double pmax = 0.0, rmax = 0.0, p2 = 0.0, r2 = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    pmax = std::max(pmax, std::abs(psi[i]));
    rmax = std::max(rmax, std::abs(r[i]));
    p2 += psi[i] * psi[i];
    r2 += r[i] * r[i];
  }
  const double scale = 1.0 + std::abs(sol.E) + vmax;
  rep.max_rel_residual = pmax == 0.0 ? 0.0 : rmax / (pmax * scale);
  rep.l2_rel_residual = p2 == 0.0 ? 0.0 : std::sqrt(r2 / p2) / scale;
  return rep;
}

namespace {

std::vector<double> interior_grid(Interval dom, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = dom.lo + (dom.hi - dom.lo) * (i + 1) / (n + 1);
  return g;
}

// K/2 unless psi nearly vanishes there; then the grid point of largest |psi|.
double reference_point(const SeriesSolution& a, const std::vector<double>& grid) {
  const double ustar = 0.5 * complete_K(a.spec.k);
  double best = grid.front(), vbest = 0.0;
  for (double u : grid) {
    const double v = std::abs(evaluate(a, u));
    if (v > vbest) {
      vbest = v;
      best = u;
    }
  }
  return std::abs(evaluate(a, ustar)) >= 0.1 * vbest ? ustar : best;
}

}  // namespace

double normalized_max_deviation(const SeriesSolution& a, const SeriesSolution& b, Interval dom, int n) {
  const auto grid = interior_grid(dom, n);
  const double u0 = reference_point(a, grid);
  const double na = evaluate(a, u0);
  const double nb = evaluate(b, u0);
  double dev = 0.0;
  for (double u : grid) dev = std::max(dev, std::abs(evaluate(a, u) / na - evaluate(b, u) / nb));
  return dev;
}

double proportionality_defect(const SeriesSolution& a, const SeriesSolution& b, Interval dom, int n) {
  const auto grid = interior_grid(dom, n);
  const double u0 = reference_point(a, grid);
  const double c = evaluate(a, u0) / evaluate(b, u0);
  double dev = 0.0, amax = 0.0;
  for (double u : grid) {
    const double va = evaluate(a, u);
    dev = std::max(dev, std::abs(va - c * evaluate(b, u)));
    amax = std::max(amax, std::abs(va));
  }
  return amax == 0.0 ? dev : dev / amax;
}

bool EquivalenceReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const EquivalenceCheck& c) { return c.passed; });
}

double evaluate_literal(const SeriesSolution& sol, double u) {
  if (!euler_stored(sol.family)) return evaluate(sol, u);
  const bool bold = sol.family.group == FamilyGroup::HyperBold;
  const Interval dom = family_domain(sol.spec, sol.family);
  if (u < dom.lo || u > dom.hi) throw DomainError("evaluate_literal: u outside the family domain");
  const HyperTerm h = *hyper_term(sol.spec, sol.family);
  const JacobiTriple j = jacobi(u, sol.spec.k);
  Prefactor p = sol.prefactor;
  if (bold) p.p_sn += 1.0;
  else p.p_cn += 1.0;
  const double z = std::min(1.0, bold ? j.cn * j.cn : j.sn * j.sn);
  double sum = 0.0, zn = 1.0;
  for (std::size_t n = 0; n < sol.coeffs.size(); ++n) {
    const double dn = static_cast<double>(n);
    sum += sol.coeffs[n] * zn * tilde_F(h.C0 - h.A0, dn + h.C0 - h.B0, dn + h.C0, z);
    zn *= z;
  }
  return std::pow(j.sn, p.p_sn) * std::pow(j.cn, p.p_cn) * std::pow(j.dn, p.p_dn) * sum;
}

namespace {

void add(EquivalenceReport& rep, std::string name, double dev, double tol) {
  rep.checks.push_back({std::move(name), dev, tol, std::isfinite(dev) && dev <= tol});
}

std::string fmt_l(double l) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", l);
  return buf;
}

}  // namespace

EquivalenceReport equivalence_suite(const PotentialSpec& spec) {
  EquivalenceReport rep;
  const PotentialSpec partner = symmetry_partner(spec);

  for (const ExpansionFamily& fam : supported_families(spec.kind)) {
    if (!truncation_order(spec, fam)) continue;
    const ExpansionFamily pf = symmetry_partner_family(spec.kind, fam);
    const std::string tag = family_name(fam) + "(l=" + fmt_l(spec.l) + ") vs " + family_name(pf) +
                            "(l=" + fmt_l(partner.l) + ")";
    if (!truncation_order(partner, pf)) {
      add(rep, tag + " partner terminates", INFINITY, 0.0);
      continue;
    }
    const SpectrumResult a = finite_spectrum(spec, fam);
    const SpectrumResult b = finite_spectrum(partner, pf);
    if (a.energies.size() != b.energies.size()) {
      add(rep, tag + " energy count", std::abs(double(a.energies.size()) - double(b.energies.size())), 0.0);
      continue;
    }
    double de = 0.0, dpsi = 0.0;
    const Interval dom = family_domain(spec, fam);
    for (std::size_t i = 0; i < a.energies.size(); ++i) {
      de = std::max(de, std::abs(a.energies[i] - b.energies[i]));
      dpsi = std::max(dpsi, normalized_max_deviation(a.solutions[i], b.solutions[i], dom));
    }
    add(rep, tag + " energies", de, 1e-10);
    if (!a.energies.empty()) add(rep, tag + " eigenfunctions", dpsi, 1e-9);

    if (euler_stored(fam)) {
      const Interval d = family_domain(spec, fam);
      double dev = 0.0;
      for (const SeriesSolution& s : a.solutions) {
        double m = 0.0, diff = 0.0;
        for (double u : interior_grid(d, 32)) {
          const double v = evaluate(s, u);
          m = std::max(m, std::abs(v));
          diff = std::max(diff, std::abs(v - evaluate_literal(s, u)));
        }
        dev = std::max(dev, m == 0.0 ? diff : diff / m);
      }
      if (!a.solutions.empty()) add(rep, family_name(fam) + " Euler form vs literal form", dev, 1e-10);
    }
  }

  // Infinite power series: family 5 and family 1 (6/2 or 7/3) at the same energy.
  const int odd5 = spec.kind == PotentialKind::V1 ? 6 : 7;
  const int odd1 = spec.kind == PotentialKind::V1 ? 2 : 3;
  for (const auto& [i5, i1] : {std::pair{5, 1}, std::pair{odd5, odd1}}) {
    const ExpansionFamily f5{FamilyGroup::PowerRing, i5};
    const ExpansionFamily f1{FamilyGroup::PowerRing, i1};
    if (truncation_order(spec, f5) || truncation_order(spec, f1)) continue;
    const std::vector<double> roots = infinite_spectrum(spec, f5, std::nullopt, 1);
    if (roots.empty()) continue;
    const double E = roots.front();
    const std::string tag = "ring" + std::to_string(i5) + " vs ring" + std::to_string(i1) +
                            " infinite series at E=" + fmt_l(E);
    try {
      const SeriesSolution a = make_infinite_solution(spec, f5, E);
      const SeriesSolution b = make_infinite_solution(spec, f1, E);
      add(rep, tag, normalized_max_deviation(a, b, family_domain(spec, f5)), 1e-9);
    } catch (const Error& e) {
      add(rep, tag + " (" + e.what() + ")", INFINITY, 1e-9);
    }
  }
  return rep;
}

}  // namespace qes
