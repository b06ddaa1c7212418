// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace qes {

/// Elliptic modulus in the three forms the library needs: k, the parameter
/// m = k^2, and the Heun singularity a = 1/k^2. Always 0 < k^2 < 1.
class EllipticModulus {
public:
  /// Throws DomainError unless 0 < k2 < 1.
  static EllipticModulus from_k2(double k2);
  static EllipticModulus from_k(double k);

  double k() const noexcept { return k_; }
  double k2() const noexcept { return k2_; }
  /// Complementary modulus sqrt(1 - k^2).
  double kp() const noexcept { return kp_; }
  /// Heun singular point a = 1/k^2.
  double a() const noexcept { return 1.0 / k2_; }

private:
  EllipticModulus(double k, double k2, double kp) : k_(k), k2_(k2), kp_(kp) {}
  double k_;
  double k2_;
  double kp_;
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// Complete elliptic integral of the first kind K(m), m = k^2 in [0, 1),
/// by the arithmetic-geometric mean.
double complete_K(double k2);
inline double complete_K(const EllipticModulus& k) { return complete_K(k.k2()); }

/// Jacobi elliptic functions sn, cn, dn for real u and parameter m = k^2 in [0, 1).
///
/// The argument is reduced to [0, K/2] with the quarter-period reflections
/// (so cn keeps full relative accuracy close to u = K) and then evaluated by
/// the descending Landen / AGM scheme, or a Taylor expansion for |u| < 1e-4.
/// dn(K) is the standard sqrt(1 - k^2).
JacobiTriple jacobi(double u, double k2);
inline JacobiTriple jacobi(double u, const EllipticModulus& k) { return jacobi(u, k.k2()); }

/// Gamma function (Lanczos, reflection below 1/2). PoleError at 0, -1, -2, ...
double gamma_fn(double x);

/// 1/Gamma(x), which is entire: returns 0 at the poles of Gamma.
double reciprocal_gamma(double x);

/// True when x is within 1e-12 of a non-positive integer.
bool is_nonpositive_integer(double x) noexcept;

/// Gauss hypergeometric function 2F1(A, B; C; z) for real arguments.
///
/// Accepts |z| < 1, or z = 1 with C - A - B > 0, or any z when the series
/// terminates (A or B a non-positive integer). Terminating series are summed
/// exactly. For z > 0.9 the z -> 1 - z connection formula is used when
/// C - A - B is not close to an integer; otherwise the Euler relation is
/// applied when C - A - B < 0. For z < -1/2 the Pfaff transformation is used.
///
/// UndefinedError when C is a non-positive integer and the series does not
/// stop before the vanishing denominator; DomainError outside the region of
/// convergence; ConvergenceError beyond 10^4 terms.
double gauss_2F1(double A, double B, double C, double z);

/// The sum of the raw power series of 2F1 with the same termination rule,
/// without any transformation. Used for small |z| and as a building block.
double gauss_2F1_series(double A, double B, double C, double z);

/// Normalized hypergeometric function F(A, B; C; z) / Gamma(C).
double tilde_F(double A, double B, double C, double z);

}  // namespace qes
