// SPDX-License-Identifier: Apache-2.0

#include "qes/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qes/errors.hpp"

namespace qes {

namespace {

constexpr int kAgmCap = 64;
constexpr int kSeriesCap = 10000;
constexpr double kEps = 2.220446049250313e-16;

void check_parameter(double k2, const char* who) {
  if (!std::isfinite(k2) || k2 < 0.0 || k2 >= 1.0)
    throw DomainError(std::string(who) + ": need 0 <= k^2 < 1, got " + std::to_string(k2));
}

// Lanczos, g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {  // x >= 0.5
  x -= 1.0;
  double s = kLanczos[0];
  for (int i = 1; i < 9; ++i) s += kLanczos[i] / (x + i);
  const double t = x + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * s;
}

}  // namespace

EllipticModulus EllipticModulus::from_k2(double k2) {
  if (!std::isfinite(k2) || !(k2 > 0.0) || !(k2 < 1.0))
    throw DomainError("elliptic modulus: need 0 < k^2 < 1, got " + std::to_string(k2));
  return EllipticModulus(std::sqrt(k2), k2, std::sqrt(1.0 - k2));
}

EllipticModulus EllipticModulus::from_k(double k) {
  if (!std::isfinite(k)) throw DomainError("elliptic modulus: non-finite k");
  auto m = from_k2(k * k);
  m.k_ = std::abs(k);
  return m;
}

double complete_K(double k2) {
  check_parameter(k2, "complete_K");
  double a = 1.0;
  double b = std::sqrt(1.0 - k2);
  for (int i = 0; i < kAgmCap; ++i) {
    if (std::abs(a - b) <= 4.0 * kEps * a) return std::numbers::pi / (a + b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  throw ConvergenceError("complete_K: AGM did not converge");
}

namespace {

// sn, cn, dn for 0 <= u <= K/2.
JacobiTriple jacobi_core(double u, double m) {
  if (u < 1e-4) {
    const double u2 = u * u;
    const double sn = u * (1.0 - (1.0 + m) * u2 / 6.0 + (1.0 + 14.0 * m + m * m) * u2 * u2 / 120.0);
    const double cn = 1.0 - u2 / 2.0 + (1.0 + 4.0 * m) * u2 * u2 / 24.0;
    const double dn = 1.0 - m * u2 / 2.0 + m * (4.0 + m) * u2 * u2 / 24.0;
    return {sn, cn, dn};
  }
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};

  std::array<double, kAgmCap + 1> as{};
  std::array<double, kAgmCap + 1> cs{};
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c = std::sqrt(m);
  int n = 0;
  as[0] = a;
  cs[0] = c;
  while (std::abs(c) > kEps * a) {
    if (n == kAgmCap) throw ConvergenceError("jacobi: AGM did not converge");
    c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    ++n;
    as[n] = a;
    cs[n] = c;
  }
  double phi = std::ldexp(as[n] * u, n);
  for (int j = n; j > 0; --j) phi = 0.5 * (phi + std::asin(cs[j] * std::sin(phi) / as[j]));
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  return {sn, cn, std::sqrt(1.0 - m * sn * sn)};
}

}  // namespace

JacobiTriple jacobi(double u, double k2) {
  check_parameter(k2, "jacobi");
  if (!std::isfinite(u)) throw DomainError("jacobi: non-finite argument");
  if (k2 == 0.0) return {std::sin(u), std::cos(u), 1.0};

  const double K = complete_K(k2);
  const double kp = std::sqrt(1.0 - k2);
  double sn_sign = u < 0.0 ? -1.0 : 1.0;
  double cn_sign = 1.0;
  double r = std::fmod(std::abs(u), 4.0 * K);
  if (r > 2.0 * K) {  // sn(u+2K) = -sn u, cn(u+2K) = -cn u
    r -= 2.0 * K;
    sn_sign = -sn_sign;
    cn_sign = -cn_sign;
  }
  if (r > K) {  // u -> 2K - u flips cn only
    r = 2.0 * K - r;
    cn_sign = -cn_sign;
  }
  JacobiTriple t;
  if (r > 0.5 * K) {
    const JacobiTriple v = jacobi_core(K - r, k2);
    t = {v.cn / v.dn, kp * v.sn / v.dn, kp / v.dn};
  } else {
    t = jacobi_core(r, k2);
  }
  t.sn *= sn_sign;
  t.cn *= cn_sign;
  return t;
}

bool is_nonpositive_integer(double x) noexcept {
  return x <= 1e-12 && std::abs(x - std::round(x)) < 1e-12;
}

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma_fn: non-finite argument");
  if (is_nonpositive_integer(x)) throw PoleError("gamma_fn: pole at " + std::to_string(x));
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  if (x == std::round(x) && x <= 171.0) {
    double f = 1.0;
    for (int i = 2; i < static_cast<int>(x); ++i) f *= i;
    return f;
  }
  return lanczos_gamma(x);
}

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / gamma_fn(x);
}

double gauss_2F1_series(double A, double B, double C, double z) {
  if (z == 0.0) return 1.0;
  // Terminating case: A or B = -m.
  int m = -1;
  if (is_nonpositive_integer(A)) m = static_cast<int>(-std::round(A));
  if (is_nonpositive_integer(B)) {
    const int mb = static_cast<int>(-std::round(B));
    m = m < 0 ? mb : std::min(m, mb);
  }
  if (is_nonpositive_integer(C)) {
    const int j = static_cast<int>(-std::round(C));
    if (m < 0 || m > j) throw UndefinedError("gauss_2F1: C is a non-positive integer");
  }
  if (m >= 0) {
    if (m > kSeriesCap) throw ConvergenceError("gauss_2F1: polynomial degree above cap");
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < m; ++n) {
      term *= (A + n) * (B + n) / ((C + n) * (n + 1.0)) * z;
      sum += term;
    }
    return sum;
  }
  if (!(std::abs(z) <= 1.0)) throw DomainError("gauss_2F1: |z| > 1 for a non-terminating series");
  if (std::abs(z) == 1.0 && !(C - A - B > 0.0))
    throw DomainError("gauss_2F1: divergent at |z| = 1");
  double term = 1.0;
  double sum = 1.0;
  int small = 0;
  for (int n = 0; n < kSeriesCap; ++n) {
    term *= (A + n) * (B + n) / ((C + n) * (n + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) {
      if (++small == 2) return sum;
    } else {
      small = 0;
    }
  }
  throw ConvergenceError("gauss_2F1: series did not converge within 10^4 terms");
}

double gauss_2F1(double A, double B, double C, double z) {
  if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(C) || !std::isfinite(z))
    throw DomainError("gauss_2F1: non-finite argument");
  const bool terminating = is_nonpositive_integer(A) || is_nonpositive_integer(B);
  if (terminating || std::abs(z) <= 0.5) return gauss_2F1_series(A, B, C, z);
  if (is_nonpositive_integer(C)) throw UndefinedError("gauss_2F1: C is a non-positive integer");
  if (z < -1.0 || z > 1.0) throw DomainError("gauss_2F1: |z| > 1 for a non-terminating series");

  if (z < 0.0) {
    // Pfaff: maps z in [-1, -1/2) into [1/3, 1/2].
    return std::pow(1.0 - z, -A) * gauss_2F1_series(A, C - B, C, z / (z - 1.0));
  }

  const double s = C - A - B;
  if (z == 1.0 && !(s > 0.0)) throw DomainError("gauss_2F1: divergent at z = 1");
  if (z <= 0.9) return gauss_2F1_series(A, B, C, z);
  // Close to z = 1 the series decays like n^(-s-1); switch to 1 - z unless
  // the Gamma factors would cancel (s near an integer).
  if (std::abs(s - std::round(s)) > 1e-3) {
    const double w = 1.0 - z;
    const double g1 = gamma_fn(s) * reciprocal_gamma(C - A) * reciprocal_gamma(C - B);
    double out = g1 == 0.0 ? 0.0 : g1 * gauss_2F1_series(A, B, 1.0 - s, w);
    if (w > 0.0) {
      const double g2 = gamma_fn(-s) * reciprocal_gamma(A) * reciprocal_gamma(B);
      if (g2 != 0.0) out += std::pow(w, s) * g2 * gauss_2F1_series(C - A, C - B, 1.0 + s, w);
    }
    return gamma_fn(C) * out;
  }
  if (s < 0.0)
    return std::pow(1.0 - z, s) * gauss_2F1_series(C - A, C - B, C, z);
  return gauss_2F1_series(A, B, C, z);
}

double tilde_F(double A, double B, double C, double z) {
  if (is_nonpositive_integer(C)) throw UndefinedError("tilde_F: C is a non-positive integer");
  return gauss_2F1(A, B, C, z) / gamma_fn(C);
}

}  // namespace qes
