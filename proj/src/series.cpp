// SPDX-License-Identifier: Apache-2.0

#include "qes/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qes/errors.hpp"

namespace qes {

Recurrence::Recurrence(double l, double a_lead, std::optional<double> a_shift, double b2,
                       double b1, double b0, double slope, std::vector<HalfRoot> roots, double E)
    : l_(l), a_lead_(a_lead), a_shift_(a_shift), b2_(b2), b1_(b1), b0_(b0), slope_(slope),
      roots_(std::move(roots)), E_(E) {}

double Recurrence::alpha(int n) const {
  const double m = n;
  return a_shift_ ? a_lead_ * (m + 1.0) * (m + *a_shift_) : a_lead_ * (m + 1.0);
}

double Recurrence::beta_at_zero(int n) const {
  const double m = n;
  return (b2_ * m + b1_) * m + b0_;
}

double Recurrence::beta(int n) const { return beta_at_zero(n) + slope_ * E_; }

double Recurrence::gamma(int n) const {
  double g = 1.0;
  for (const HalfRoot& r : roots_) g *= n - r.value(l_);
  return g;
}

Recurrence Recurrence::at_energy(double E) const {
  Recurrence r = *this;
  r.E_ = E;
  return r;
}

RecurrenceTriple as_triple(const Recurrence& r) {
  return {[r](int n) { return r.alpha(n); }, [r](int n) { return r.beta(n); },
          [r](int n) { return r.gamma(n); }};
}

Recurrence recurrence(const PotentialSpec& spec, const ExpansionFamily& fam, double E) {
  require_supported(spec.kind, fam);
  const double l = spec.l;
  const double s = spec.k.a();
  const double l2 = l * l;
  const int i = fam.index;
  using R = Recurrence;
  using V = std::vector<HalfRoot>;

  if (spec.kind == PotentialKind::V1) {
    if (fam.group == FamilyGroup::PowerRing) {
      const double b2 = -(1.0 + s);
      switch (i) {
        case 1:
          return R(l, s, 0.5, b2, -(3.0 + l + 2.0 * s), -(l2 + 6 * l + 7) / 4 + s * (l2 + 5 * l + 2) / 4,
                   s / 4, V{{-1, -4}, {-1, -3}}, E);
        case 2:
          return R(l, s, 1.5, b2, -(4.0 + l + 3.0 * s), -(l2 + 8 * l + 14) / 4 + s * (l2 + 5 * l - 3) / 4,
                   s / 4, V{{-1, -4}, {-1, -5}}, E);
        case 5:
          return R(l, s, 0.5, b2, 2.0 + l - 2.0 * s, -(l2 + 4 * l + 2) / 4 + s * (l2 + 5 * l + 2) / 4,
                   s / 4, V{{1, 2}, {1, 1}}, E);
        default:
          return R(l, s, 1.5, b2, 1.0 + l - 3.0 * s, -(l2 + 2 * l - 1) / 4 + s * (l2 + 5 * l - 3) / 4,
                   s / 4, V{{1, 1}, {1, 0}}, E);
      }
    }
    const double a1 = 1.0 - s;
    const double b2 = s - 2.0;
    switch (i) {
      case 1:
        return R(l, a1, std::nullopt, b2, s * (l + 4) - 2 * l - 9,
                 -(l2 + 13 * l + 35) / 4 + s * (3 * l + 10) / 4, -s / 4, V{{-1, -4}, {-1, -5}, {-2, -5}}, E);
      case 2:
        return R(l, a1, std::nullopt, b2, s * (l + 3) - 2 * l - 8, -(l2 + 11 * l + 28) / 4 + s * (l + 3) / 4,
                 -s / 4, V{{-1, -3}, {-1, -4}, {-2, -5}}, E);
      case 5:
        return R(l, a1, std::nullopt, b2, 2 + 2 * l - s * (l + 2), (2 + l - l2) / 4 - s * (l + 2) / 4,
                 -s / 4, V{{1, 1}, {1, 2}, {2, 5}}, E);
      default:
        return R(l, a1, std::nullopt, b2, 1 + 2 * l - s * (l + 1), (5 + 3 * l - l2) / 4 - s * (3 * l + 5) / 4,
                 -s / 4, V{{1, 0}, {1, 1}, {2, 5}}, E);
    }
  }

  const double b2 = -(1.0 + s);
  const double lp5 = (l + 5) * (l + 5) / 4;
  if (fam.group == FamilyGroup::PowerRing) {
    switch (i) {
      case 1:
        return R(l, s, 2.5, b2, -(l + 5 + 2 * s), -lp5 + s * (l2 + 5 * l + 2) / 4, s / 4,
                 V{{-1, -3}, {-1, -4}}, E);
      case 3:
        return R(l, s, 2.5, b2, -(l + 5) - 3 * s, -lp5 + s * (l2 + 5 * l - 3) / 4, s / 4,
                 V{{-1, -4}, {-1, -5}}, E);
      case 5:
        return R(l, s, 2.5, b2, l - 2 * s, -l2 / 4 + s * (l2 + 5 * l + 2) / 4, s / 4, V{{1, 1}, {1, 2}}, E);
      default:
        return R(l, s, 2.5, b2, l - 3 * s, -l2 / 4 + s * (l2 + 5 * l - 3) / 4, s / 4, V{{1, 0}, {1, 1}}, E);
    }
  }
  switch (i) {
    case 1:
      return R(l, s, std::nullopt, b2, -(l + 5) - s * (l + 4), -lp5 - s * (3 * l + 10) / 4, s / 4,
               V{{-1, -4}, {-1, -5}, {-2, -5}}, E);
    case 3:
      return R(l, s, std::nullopt, b2, -(l + 5) - s * (l + 3), -lp5 - s * (l + 3) / 4, s / 4,
               V{{-1, -3}, {-1, -4}, {-2, -5}}, E);
    case 5:
      return R(l, s, std::nullopt, b2, l + s * (l + 2), -l2 / 4 + s * (l + 2) / 4, s / 4,
               V{{1, 1}, {1, 2}, {2, 5}}, E);
    default:
      return R(l, s, std::nullopt, b2, l + s * (l + 1), -l2 / 4 + s * (3 * l + 5) / 4, s / 4,
               V{{1, 0}, {1, 1}, {2, 5}}, E);
  }
}

namespace {

// Generic power-series recurrence of the Heun equation around x = 0.
RecurrenceTriple ring_generic(const HeunParams& p) {
  return {[p](int n) { return p.a * (n + p.gamma) * (n + 1.0); },
          [p](int n) {
            return -(p.a + 1) * n * n - (p.a * (p.gamma + p.delta - 1) + p.alpha + p.beta - p.delta) * n - p.q;
          },
          [p](int n) { return (n + p.alpha - 1) * (n + p.beta - 1); }};
}

// Recurrence for the expansion in F~(n+alpha, gamma+delta-alpha-1; n+gamma; x).
RecurrenceTriple bar_generic(const HeunParams& p) {
  return {[p](int n) { return p.a * (n + 1.0); },
          [p](int n) {
            return -(p.a + 1) * n * n -
                   (p.a * (2 * p.alpha + 1 - p.gamma - p.delta) + p.alpha + p.beta - p.delta) * n - p.q -
                   p.a * p.alpha * (p.alpha + 1 - p.gamma - p.delta);
          },
          [p](int n) {
            return (n + p.alpha - 1) * (n + p.alpha - p.delta) * (n + p.alpha + p.beta - p.gamma - p.delta);
          }};
}

}  // namespace

RecurrenceTriple derived_recurrence(const PotentialSpec& spec, const ExpansionFamily& fam, double E) {
  require_supported(spec.kind, fam);
  const HeunParams t = homotopic(fam.index, darboux_params(spec, E)).params;
  switch (fam.group) {
    case FamilyGroup::PowerRing: return ring_generic(t);
    case FamilyGroup::HyperBar: return bar_generic(t);
    case FamilyGroup::HyperBold: return bar_generic(fractional_m49(t));
  }
  throw ArgumentError("unknown family group");
}

std::optional<int> truncation_order(const PotentialSpec& spec, const ExpansionFamily& fam) {
  const Recurrence r = recurrence(spec, fam, 0.0);
  const double l = spec.l;
  const double twice = 2.0 * l;
  const bool half_grid = std::abs(twice - std::round(twice)) < 1e-9;
  if (!half_grid) return std::nullopt;
  const long long m = std::llround(twice);  // l = m/2
  std::optional<long long> best;
  for (const HalfRoot& h : r.gamma_roots()) {
    // 2 r = p m/2 + q  <=>  4 r = p m + 2 q
    const long long four_r = h.p * m + 2LL * h.q;
    if (four_r % 4 != 0) continue;
    const long long root = four_r / 4;
    if (root >= 1 && (!best || root < *best)) best = root;
  }
  if (!best) return std::nullopt;
  return static_cast<int>(*best - 1);
}

std::optional<HyperTerm> hyper_term(const PotentialSpec& spec, const ExpansionFamily& fam) {
  require_supported(spec.kind, fam);
  if (fam.group == FamilyGroup::PowerRing) return std::nullopt;
  const double l = spec.l;
  // Both hypergeometric groups share the same stored factors, with c - a - b = 1/2.
  switch (fam.index) {
    case 1: return HyperTerm{(l + 6) / 2, -(l + 2) / 2, 2.5};
    case 2:
    case 3: return HyperTerm{(l + 5) / 2, -(l + 1) / 2, 2.5};
    case 5: return HyperTerm{-l / 2, 2 + l / 2, 2.5};
    default: return HyperTerm{(1 - l) / 2, (l + 3) / 2, 2.5};
  }
}

std::vector<double> solve_coeffs_finite(const PotentialSpec& spec, const ExpansionFamily& fam,
                                        double E) {
  const auto N = truncation_order(spec, fam);
  if (!N) throw ArgumentError("solve_coeffs_finite: series does not terminate for this l");
  const Recurrence r = recurrence(spec, fam, E);
  std::vector<double> b(*N + 1);
  b[0] = 1.0;
  for (int n = 0; n < *N; ++n) {
    const double prev = n > 0 ? r.gamma(n) * b[n - 1] : 0.0;
    b[n + 1] = -(r.beta(n) * b[n] + prev) / r.alpha(n);
  }
  const int n = *N;
  const double last = r.beta(n) * b[n] + (n > 0 ? r.gamma(n) * b[n - 1] : 0.0);
  double bmax = 0.0;
  double cscale = 1.0;
  for (int j = 0; j <= n; ++j) {
    bmax = std::max(bmax, std::abs(b[j]));
    cscale = std::max({cscale, std::abs(r.alpha(j)), std::abs(r.beta(j)), std::abs(r.gamma(j))});
  }
  const double rel = std::abs(last) / (bmax * cscale);
  if (!(rel < 1e-9))
    throw ConsistencyError("E = " + std::to_string(E) + " does not close the recurrence (residual " +
                               std::to_string(rel) + ")",
                           rel);
  return b;
}

namespace {

// r[j] = b_{j+1}/b_j for j < n_max, from a backward sweep started at top.
std::vector<double> backward_ratios(const Recurrence& r, int n_max, int top) {
  std::vector<double> out(n_max);
  double ratio = 0.0;
  for (int n = top; n >= 1; --n) {
    ratio = -r.gamma(n) / (r.beta(n) + r.alpha(n) * ratio);
    if (n - 1 < n_max) out[n - 1] = ratio;
  }
  return out;
}

}  // namespace

InfiniteCoeffs solve_coeffs_infinite(const PotentialSpec& spec, const ExpansionFamily& fam, double E,
                                     int n_max) {
  require_supported(spec.kind, fam);
  if (fam.group != FamilyGroup::PowerRing)
    throw ArgumentError("solve_coeffs_infinite: only power-series families");
  if (n_max < 1) throw ArgumentError("solve_coeffs_infinite: n_max must be >= 1");
  if (truncation_order(spec, fam))
    throw ArgumentError("solve_coeffs_infinite: gamma_n vanishes, the series terminates");
  const Recurrence r = recurrence(spec, fam, E);

  int buffer = std::max(64, n_max / 2);
  std::vector<double> prev = backward_ratios(r, n_max, n_max + buffer);
  for (;;) {
    if (buffer > 100000) throw MinimalSolutionError("backward recurrence did not settle");
    buffer *= 2;
    std::vector<double> cur = backward_ratios(r, n_max, n_max + buffer);
    double change = 0.0;
    for (int j = 0; j < n_max; ++j) {
      if (!std::isfinite(cur[j])) throw MinimalSolutionError("backward recurrence hit a zero denominator");
      change = std::max(change, std::abs(cur[j] - prev[j]) / std::max(std::abs(cur[j]), 1e-300));
    }
    prev = std::move(cur);
    if (change < 1e-13) break;
  }

  InfiniteCoeffs out;
  out.buffer = buffer;
  out.coeffs.resize(n_max + 1);
  out.coeffs[0] = 1.0;
  for (int j = 0; j < n_max; ++j) out.coeffs[j + 1] = out.coeffs[j] * prev[j];
  out.tail_ratio = prev[n_max - 1];
  const double k2 = spec.k.k2();
  if (!(std::abs(out.tail_ratio - k2) < std::abs(out.tail_ratio - 1.0)))
    throw MinimalSolutionError("tail ratio " + std::to_string(out.tail_ratio) +
                               " is not the recessive one");
  return out;
}

SeriesSolution make_finite_solution(const PotentialSpec& spec, const ExpansionFamily& fam, double E) {
  SeriesSolution s{fam, spec, E, solve_coeffs_finite(spec, fam, E), family_prefactor(spec, fam),
                   SeriesKind::Finite};
  return s;
}

SeriesSolution make_infinite_solution(const PotentialSpec& spec, const ExpansionFamily& fam, double E,
                                      int n_max) {
  InfiniteCoeffs c = solve_coeffs_infinite(spec, fam, E, n_max);
  SeriesSolution s{fam, spec, E, std::move(c.coeffs), family_prefactor(spec, fam), SeriesKind::Infinite};
  s.tail_ratio = c.tail_ratio;
  return s;
}

Interval family_domain(const PotentialSpec& spec, const ExpansionFamily& fam) {
  require_supported(spec.kind, fam);
  const double K = complete_K(spec.k);
  if (fam.group != FamilyGroup::PowerRing) return {0.0, K};
  if (spec.kind == PotentialKind::V1) return {-K, K};
  return {0.0, 2.0 * K};
}

namespace {

double signed_power(double base, double p, const char* name) {
  if (p == 0.0) return 1.0;
  if (base == 0.0) {
    if (p < 0.0) throw SingularPointError(std::string("negative power of vanishing ") + name);
    return 0.0;
  }
  if (base < 0.0 && p != std::round(p))
    throw DomainError(std::string("fractional power of negative ") + name);
  return std::pow(base, p);
}

}  // namespace

double evaluate(const SeriesSolution& sol, double u) {
  const Interval dom = family_domain(sol.spec, sol.family);
  const double slack = 1e-12 * (dom.hi - dom.lo);
  if (!(u >= dom.lo - slack && u <= dom.hi + slack))
    throw DomainError("evaluate: u = " + std::to_string(u) + " outside [" + std::to_string(dom.lo) + ", " +
                      std::to_string(dom.hi) + "]");
  const JacobiTriple j = jacobi(u, sol.spec.k);
  const Prefactor& p = sol.prefactor;
  const double pre = signed_power(j.sn, p.p_sn, "sn") * signed_power(j.cn, p.p_cn, "cn") *
                     signed_power(j.dn, p.p_dn, "dn");

  double sum = 0.0;
  const auto hyper = hyper_term(sol.spec, sol.family);
  if (!hyper) {
    const double x = j.sn * j.sn;
    for (auto it = sol.coeffs.rbegin(); it != sol.coeffs.rend(); ++it) sum = sum * x + *it;
  } else {
    const double z = std::min(1.0, sol.family.group == FamilyGroup::HyperBar ? j.sn * j.sn : j.cn * j.cn);
    double zn = 1.0;
    for (std::size_t n = 0; n < sol.coeffs.size(); ++n) {
      const double dn = static_cast<double>(n);
      sum += sol.coeffs[n] * zn * tilde_F(dn + hyper->A0, hyper->B0, dn + hyper->C0, z);
      zn *= z;
    }
  }
  return pre * sum;
}

}  // namespace qes
