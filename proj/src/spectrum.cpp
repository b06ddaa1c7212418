// SPDX-License-Identifier: Apache-2.0

#include "qes/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qes/errors.hpp"

namespace qes {

double characteristic_det(const PotentialSpec& spec, const ExpansionFamily& fam, double E, int N) {
  const Recurrence r = recurrence(spec, fam, E);
  double d_prev = 1.0;  // D_{-1}
  double d = r.beta(0);
  for (int n = 1; n <= N; ++n) {
    const double next = r.beta(n) * d - r.alpha(n - 1) * r.gamma(n) * d_prev;
    d_prev = d;
    d = next;
  }
  return d;
}

ArscottReport arscott_check(const PotentialSpec& spec, const ExpansionFamily& fam) {
  const auto N = truncation_order(spec, fam);
  if (!N) throw ArgumentError("arscott_check: series does not terminate");
  const Recurrence r = recurrence(spec, fam, 0.0);
  ArscottReport rep{true, {}};
  for (int n = 1; n <= *N; ++n) {
    if (!(r.alpha(n - 1) * r.gamma(n) > 0.0)) {
      rep.ok = false;
      rep.violating.push_back(n);
    }
  }
  return rep;
}

int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> sturm_eigenvalues(const std::vector<double>& diag, const std::vector<double>& off) {
  const std::size_t n = diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < n) radius += std::abs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  lo -= pad;
  hi += pad;

  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k-th eigenvalue: smallest x with count(x) > k.
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (sturm_count(diag, off, m) > static_cast<int>(k))
        b = m;
      else
        a = m;
    }
    out[k] = 0.5 * (a + b);
  }
  return out;
}

namespace {

// Bisection of g on [a, b] given g(a), g(b) of opposite sign.
template <class F>
double bisect(F&& g, double a, double b, double ga) {
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double gm = g(m);
    if (gm == 0.0) return m;
    if ((gm < 0.0) == (ga < 0.0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

void annotate_degeneracies(SpectrumResult& res) {
  for (std::size_t i = 0; i < res.energies.size(); ++i)
    for (std::size_t j = i + 1; j < res.energies.size(); ++j) {
      const double e = res.energies[i];
      if (std::abs(res.energies[j] - e) < 1e-9 * (1.0 + std::abs(e)))
        res.degenerate_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
}

}  // namespace

SpectrumResult finite_spectrum(const PotentialSpec& spec, const ExpansionFamily& fam) {
  const auto N = truncation_order(spec, fam);
  if (!N) throw ArgumentError("finite_spectrum: series does not terminate for l = " + std::to_string(spec.l));
  const Recurrence r = recurrence(spec, fam, 0.0);
  const double S = r.slope();
  const int n = *N + 1;

  SpectrumResult res{fam, spec, 0, {}, {}, false, {}, {}, {}};
  res.N = *N;
  const ArscottReport ars = arscott_check(spec, fam);
  res.arscott_ok = ars.ok;
  res.arscott_violations = ars.violating;

  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = r.beta_at_zero(i);

  if (ars.ok) {
    std::vector<double> off(std::max(0, n - 1));
    for (int i = 0; i + 1 < n; ++i) off[i] = std::sqrt(r.alpha(i) * r.gamma(i + 1));
    for (double lam : sturm_eigenvalues(diag, off)) res.energies.push_back(-lam / S);
    std::sort(res.energies.begin(), res.energies.end());
  } else {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      T(i, i) = diag[i];
      if (i + 1 < n) T(i, i + 1) = r.alpha(i);
      if (i > 0) T(i, i - 1) = r.gamma(i);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(T, false);
    const auto det = [&](double E) { return characteristic_det(spec, fam, E, *N); };
    for (int i = 0; i < n; ++i) {
      const std::complex<double> lam = es.eigenvalues()[i];
      const std::complex<double> E = -lam / S;
      if (std::abs(E.imag()) > 1e-9 * (1.0 + std::abs(E))) {
        res.complex_roots.push_back(E);
        continue;
      }
      double e = E.real();
      const double w = 1e-8 * (1.0 + std::abs(e));
      const double ga = det(e - w);
      const double gb = det(e + w);
      if ((ga < 0.0) != (gb < 0.0)) e = bisect(det, e - w, e + w, ga);
      res.energies.push_back(e);
    }
    std::sort(res.energies.begin(), res.energies.end());
    std::sort(res.complex_roots.begin(), res.complex_roots.end(),
              [](auto x, auto y) { return std::pair(x.real(), x.imag()) < std::pair(y.real(), y.imag()); });
  }
  for (double e : res.energies) res.solutions.push_back(make_finite_solution(spec, fam, e));
  annotate_degeneracies(res);
  return res;
}

double continued_fraction(const PotentialSpec& spec, const ExpansionFamily& fam, double E, int depth) {
  if (depth < 1) throw ArgumentError("continued_fraction: depth must be >= 1");
  const Recurrence r = recurrence(spec, fam, E);
  double t = r.beta(depth - 1);
  for (int n = depth - 1; n >= 1; --n) t = r.beta(n - 1) - r.alpha(n - 1) * r.gamma(n) / t;
  return t;
}

namespace {

constexpr int kDepthCap = 100000;

// Sign of the depth-level truncated determinant D = f * D', D' the minor
// without row 0. Zeros of f are zeros of D, poles of f are not, so sign
// changes of D bracket roots only. Rescaled on the fly against overflow.
int truncated_det_sign(const Recurrence& r, double E, int depth) {
  const Recurrence re = r.at_energy(E);
  double d_prev = 1.0;
  double d = re.beta(0);
  for (int n = 1; n < depth; ++n) {
    const double next = re.beta(n) * d - re.alpha(n - 1) * re.gamma(n) * d_prev;
    d_prev = d;
    d = next;
    const double m = std::max(std::abs(d), std::abs(d_prev));
    if (m > 1e100 || (m < 1e-100 && m > 0.0)) {
      d /= m;
      d_prev /= m;
    }
  }
  return (d > 0.0) - (d < 0.0);
}

std::optional<double> bisect_root(const Recurrence& r, double a, double b, int depth) {
  int sa = truncated_det_sign(r, a, depth);
  const int sb = truncated_det_sign(r, b, depth);
  if (sa == 0) return a;
  if (sb == 0) return b;
  if (sa == sb) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const int sm = truncated_det_sign(r, m, depth);
    if (sm == 0) return m;
    if (sm == sa) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

InfiniteRoot infinite_energy(const PotentialSpec& spec, const ExpansionFamily& fam, Interval bracket) {
  if (truncation_order(spec, fam))
    throw ArgumentError("infinite_energy: the series terminates for this l");
  const Recurrence r = recurrence(spec, fam, 0.0);
  int depth = 64;
  const auto first = bisect_root(r, bracket.lo, bracket.hi, depth);
  if (!first) throw NoRootError("no root of the continued fraction on the bracket (poles excluded)");
  double E = *first;
  for (;;) {
    const int next_depth = depth * 2;
    if (next_depth > kDepthCap) throw ConvergenceError("continued fraction depth cap exceeded");
    // The root drifts little with depth; widen a neighbourhood until it is caught.
    std::optional<double> nxt;
    for (double w = 1e-6 * (1.0 + std::abs(E));; w *= 8.0) {
      const double a = std::max(bracket.lo, E - w);
      const double b = std::min(bracket.hi, E + w);
      nxt = bisect_root(r, a, b, next_depth);
      if (nxt || (a == bracket.lo && b == bracket.hi)) break;
    }
    if (!nxt) throw NoRootError("root disappeared when the continued fraction was deepened");
    const double shift = std::abs(*nxt - E);
    E = *nxt;
    depth = next_depth;
    if (shift < 1e-11) return {E, depth};
  }
}

Interval default_energy_window(const PotentialSpec& spec) {
  const double w = (spec.l + 6.0) * (spec.l + 6.0);
  return {-w, w * (1.0 + spec.k.a())};
}

std::vector<double> infinite_spectrum(const PotentialSpec& spec, const ExpansionFamily& fam,
                                      std::optional<Interval> window, int max_count) {
  const Interval win = window ? *window : default_energy_window(spec);
  constexpr int kSamples = 400;
  constexpr int kScanDepth = 200;
  if (truncation_order(spec, fam))
    throw ArgumentError("infinite_spectrum: the series terminates for this l");
  const Recurrence r = recurrence(spec, fam, 0.0);
  std::vector<double> xs(kSamples);
  std::vector<int> sg(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    xs[i] = win.lo + (win.hi - win.lo) * i / (kSamples - 1);
    sg[i] = truncated_det_sign(r, xs[i], kScanDepth);
  }
  std::vector<double> out;
  for (int i = 0; i + 1 < kSamples && static_cast<int>(out.size()) < max_count; ++i) {
    if (sg[i] == sg[i + 1]) continue;
    try {
      const InfiniteRoot r = infinite_energy(spec, fam, {xs[i], xs[i + 1]});
      if (out.empty() || std::abs(r.E - out.back()) > 1e-9 * (1.0 + std::abs(r.E))) out.push_back(r.E);
    } catch (const NoRootError&) {
    }
  }
  return out;
}

PotentialSpec symmetry_partner(const PotentialSpec& spec) {
  PotentialSpec p = spec;
  p.l = -spec.l - 5.0;
  return p;
}

ExpansionFamily symmetry_partner_family(PotentialKind kind, const ExpansionFamily& fam) {
  require_supported(kind, fam);
  const int i = fam.index;
  int j = 0;
  if (fam.group == FamilyGroup::PowerRing) {
    if (kind == PotentialKind::V1)
      j = i == 1 ? 5 : i == 5 ? 1 : i == 2 ? 6 : 2;
    else
      j = i == 1 ? 5 : i == 5 ? 1 : i == 3 ? 7 : 3;
  } else if (fam.group == FamilyGroup::HyperBold) {
    j = i == 5 ? 2 : i == 2 ? 5 : i == 6 ? 1 : 6;
  } else {
    j = i == 5 ? 3 : i == 3 ? 5 : i == 7 ? 1 : 7;
  }
  return {fam.group, j};
}

std::optional<std::vector<std::complex<double>>> closed_form_energies(const PotentialSpec& spec,
                                                                      const ExpansionFamily& fam) {
  const bool v1 = spec.kind == PotentialKind::V1 && fam.group == FamilyGroup::HyperBold;
  const bool v2 = spec.kind == PotentialKind::V2 && fam.group == FamilyGroup::HyperBar;
  if (!(v1 || v2) || (fam.index != 5 && fam.index != 6 && fam.index != 7)) return std::nullopt;
  if (v1 && fam.index == 7) return std::nullopt;
  if (v2 && fam.index == 6) return std::nullopt;
  const double k2 = spec.k.k2();
  using C = std::complex<double>;
  if (std::abs(spec.l + 1.5) < 1e-9) {
    if (v1) return std::vector<C>{C(-0.5 - 1.75 * k2)};
    return std::vector<C>{C(-0.5 + 2.25 * k2)};
  }
  if (std::abs(spec.l + 0.5) < 1e-9) {
    const C root = v1 ? std::sqrt(C(1 + 7 * k2 + k2 * k2)) : std::sqrt(C(1 - 9 * k2 + 9 * k2 * k2));
    const double mid = v1 ? -2.5 - 0.75 * k2 : -2.5 + 3.25 * k2;
    return std::vector<C>{C(mid) - root, C(mid) + root};
  }
  return std::nullopt;
}

}  // namespace qes
