// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qes/family.hpp"
#include "qes/heun.hpp"

namespace qes {

/// A root of gamma_n written as (p*l + q)/2 with small integers p, q, so that
/// the truncation test can be done exactly when 2l is an integer.
struct HalfRoot {
  int p;
  int q;
  double value(double l) const { return (p * l + q) / 2.0; }
};

/// Three-term recurrence alpha_n b_{n+1} + beta_n b_n + gamma_n b_{n-1} = 0 for one
/// expansion family, in closed form:
///   alpha_n = a_lead (n+1) (n + a_shift)        (a_shift absent: alpha_n = a_lead (n+1))
///   beta_n  = b2 n^2 + b1 n + b0 + slope * E
///   gamma_n = prod_i (n - r_i)
class Recurrence {
public:
  Recurrence(double l, double a_lead, std::optional<double> a_shift, double b2, double b1,
             double b0, double slope, std::vector<HalfRoot> roots, double E);

  double alpha(int n) const;
  double beta(int n) const;
  double gamma(int n) const;
  /// beta_n at E = 0.
  double beta_at_zero(int n) const;
  /// d beta_n / dE, identical for every n.
  double slope() const noexcept { return slope_; }
  double energy() const noexcept { return E_; }
  double l() const noexcept { return l_; }
  const std::vector<HalfRoot>& gamma_roots() const noexcept { return roots_; }

  Recurrence at_energy(double E) const;

private:
  double l_;
  double a_lead_;
  std::optional<double> a_shift_;
  double b2_, b1_, b0_, slope_;
  std::vector<HalfRoot> roots_;
  double E_;
};

/// Coefficient functions in plain callable form.
struct RecurrenceTriple {
  std::function<double(int)> alpha;
  std::function<double(int)> beta;
  std::function<double(int)> gamma;
};

/// Closed-form recurrence of a family. ArgumentError for unsupported pairs.
Recurrence recurrence(const PotentialSpec& spec, const ExpansionFamily& fam, double E);

/// The same coefficients produced the long way: the generic power-series or
/// hypergeometric-series recurrence applied to the base Heun constants after
/// T_i (and x -> 1 - x for the bold group). Used as a cross-check.
RecurrenceTriple derived_recurrence(const PotentialSpec& spec, const ExpansionFamily& fam, double E);

RecurrenceTriple as_triple(const Recurrence& r);

/// Smallest N >= 0 with gamma_{N+1} = 0 and gamma_n != 0 for 1 <= n <= N, or
/// nullopt for an infinite series. Exact when 2l is an integer (to 1e-9).
std::optional<int> truncation_order(const PotentialSpec& spec, const ExpansionFamily& fam);

/// Parameters of the hypergeometric factor of term n,
/// F~(n + A0, B0; n + C0; z), z = sn^2 (bar) or cn^2 (bold).
struct HyperTerm {
  double A0;
  double B0;
  double C0;
};

/// nullopt for the power group.
std::optional<HyperTerm> hyper_term(const PotentialSpec& spec, const ExpansionFamily& fam);

enum class SeriesKind { Finite, Infinite };

struct SeriesSolution {
  ExpansionFamily family;
  PotentialSpec spec;
  double E;
  std::vector<double> coeffs;  // b_0 = 1
  Prefactor prefactor;
  SeriesKind kind;
  double tail_ratio = 0.0;  // b_{n}/b_{n-1} at the last index (infinite only)
};

/// Forward recurrence b_0 = 1, alpha_n b_{n+1} = -beta_n b_n - gamma_n b_{n-1}.
/// ConsistencyError when the closing equation |beta_N b_N + gamma_N b_{N-1}|
/// exceeds 1e-9 max|b| (scaled by the size of the coefficients involved).
std::vector<double> solve_coeffs_finite(const PotentialSpec& spec, const ExpansionFamily& fam,
                                        double E);

struct InfiniteCoeffs {
  std::vector<double> coeffs;
  double tail_ratio;
  int buffer;  // extra backward steps finally used
};

/// Minimal solution b_0..b_{n_max} by Miller's backward recurrence for the
/// ratios r_{n-1} = b_n/b_{n-1} = -gamma_n / (beta_n + alpha_n r_n), started at
/// n_max + buffer with r = 0 and doubled until the ratios settle to 1e-13.
/// Power group only. The recessive ratio tends to k^2 (the dominant one to 1);
/// MinimalSolutionError when the tail is closer to the dominant ratio or the
/// ratios do not settle.
InfiniteCoeffs solve_coeffs_infinite(const PotentialSpec& spec, const ExpansionFamily& fam,
                                     double E, int n_max);

/// Finite solution at an eigenvalue (ConsistencyError otherwise).
SeriesSolution make_finite_solution(const PotentialSpec& spec, const ExpansionFamily& fam, double E);

/// Infinite power series at E, n_max = 500 by default.
SeriesSolution make_infinite_solution(const PotentialSpec& spec, const ExpansionFamily& fam,
                                      double E, int n_max = 500);

struct Interval {
  double lo;
  double hi;
};

/// Closed interval on which a family's representation is valid:
/// V1 ring [-K, K]; V2 ring [0, 2K]; V1 bold and V2 bar [0, K].
Interval family_domain(const PotentialSpec& spec, const ExpansionFamily& fam);

/// psi(u). DomainError outside family_domain, SingularPointError where a
/// negative prefactor power meets a zero.
double evaluate(const SeriesSolution& sol, double u);

}  // namespace qes
