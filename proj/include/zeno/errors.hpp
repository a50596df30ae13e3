#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace zeno {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad model parameters, config fields, or argument combinations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Lookup of a level, aux entry, or drive element that does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance. Carries the
// best value and the achieved error estimate.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, std::complex<double> value,
                  double error_estimate)
      : Error(what), value_(value), error_estimate_(error_estimate) {}
  std::complex<double> value() const { return value_; }
  double error_estimate() const { return error_estimate_; }

 private:
  std::complex<double> value_;
  double error_estimate_;
};

// Time stepping lost unitarity or otherwise failed numerically.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// Parameters outside the second-order perturbative regime.
class ValidityError : public Error {
 public:
  using Error::Error;
};

}  // namespace zeno
