#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlcm {

// Root of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument or parameter outside a function's domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// The power kernel collapses toward a point mass when beta == alpha*gamma;
// that boundary is rejected separately from ordinary domain violations so
// callers can distinguish "wrong input" from "degenerate but limiting case".
class DegenerateKernelError : public DomainError {
 public:
  explicit DegenerateKernelError(const std::string& what) : DomainError(what) {}
};

// An iterative scheme (quadrature refinement, series summation) failed to
// reach the requested tolerance within its evaluation budget.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(what) {}
};

// An intermediate series term overflowed; carries the offending index.
class SeriesOverflowError : public Error {
 public:
  SeriesOverflowError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Alternating-series cancellation exceeded the arithmetic's error budget;
// carries the largest intermediate term so callers can see the magnitude of
// the cancellation that made the result untrustworthy.
class CancellationError : public Error {
 public:
  CancellationError(const std::string& what, double max_term)
      : Error(what), max_term_(max_term) {}
  double max_term() const noexcept { return max_term_; }

 private:
  double max_term_;
};

// Argument magnitude beyond the range the series route supports at all;
// the message points the caller at the mixture-integral route.
class SeriesRangeError : public Error {
 public:
  explicit SeriesRangeError(const std::string& what) : Error(what) {}
};

// Two independent evaluation methods for the same quantity disagreed beyond
// the diagnostic threshold. Always indicates a defect, never bad input.
class MethodDisagreementError : public Error {
 public:
  MethodDisagreementError(const std::string& what, double a, double b)
      : Error(what), first_(a), second_(b) {}
  double first() const noexcept { return first_; }
  double second() const noexcept { return second_; }

 private:
  double first_;
  double second_;
};

// An integrand returned NaN (or an unexpected Inf) at a quadrature node.
class IntegrandError : public Error {
 public:
  IntegrandError(const std::string& what, double abscissa)
      : Error(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

}  // namespace mlcm
