#pragma once

#include <stdexcept>
#include <string>

namespace mqc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of a function
/// (pole of Gamma, non-positive Bessel argument, non-finite input).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A parameter set or data set violates a documented invariant:
/// alpha in N0, growth admissibility, smoothness budget, band limits.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical budget was exhausted: quadrature subdivisions, memory,
/// extrapolation that failed to converge, too little signal for a fit.
class BudgetError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_domain(const std::string& what);
[[noreturn]] void throw_validation(const std::string& what);
[[noreturn]] void throw_budget(const std::string& what);

}  // namespace mqc
