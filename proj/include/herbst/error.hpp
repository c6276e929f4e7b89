#pragma once

#include <stdexcept>
#include <string>

namespace herbst {

// Argument outside the mathematical domain of an operation (x <= 0 for K_nu,
// |mu| >= 1 for the cosh moment, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical procedure did not reach its tolerance. Carries the best
// estimate available at the point of failure.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double estimate = 0.0, double error_bound = 0.0)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace herbst
