// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. k^2 >= 1).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Hypergeometric series with a non-positive integer lower parameter that does not terminate.
class UndefinedError : public Error {
public:
  using Error::Error;
};

/// Gamma function evaluated at a pole.
class PoleError : public Error {
public:
  using Error::Error;
};

/// An iteration cap was hit before the requested accuracy.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Invalid selector or unsupported combination (family/potential, transformation index).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Evaluation requested at a pole of the potential or of the eigenfunction representation.
class SingularPointError : public Error {
public:
  using Error::Error;
};

/// A supposed eigenvalue does not close the finite recurrence.
class ConsistencyError : public Error {
public:
  ConsistencyError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Backward recurrence did not settle on the recessive solution.
class MinimalSolutionError : public Error {
public:
  using Error::Error;
};

/// Bracket without a sign change of the characteristic function.
class NoRootError : public Error {
public:
  using Error::Error;
};

}  // namespace qes
