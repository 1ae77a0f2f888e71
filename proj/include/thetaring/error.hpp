#ifndef THETARING_ERROR_HPP
#define THETARING_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace thetaring {

/// Input outside the domain of a series or construction (e.g. a period
/// matrix whose imaginary part is not positive definite).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Requested accuracy cannot be met in double precision.
class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Caller passed mismatched or malformed operands.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Linear system with a pivot below the singularity threshold.
class SingularityError : public std::runtime_error {
public:
  SingularityError(const std::string& what, double pivot)
      : std::runtime_error(what), pivot_(pivot) {}
  double pivot() const noexcept { return pivot_; }

private:
  double pivot_;
};

/// A genericity condition failed; `condition()` names it.
class DegeneracyError : public std::runtime_error {
public:
  DegeneracyError(std::string condition, const std::string& what)
      : std::runtime_error(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

private:
  std::string condition_;
};

/// An internal consistency check failed (residual too large, support
/// leaking out of the expected span, two routes disagreeing).
class ModelError : public std::runtime_error {
public:
  ModelError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

} // namespace thetaring

#endif // THETARING_ERROR_HPP
