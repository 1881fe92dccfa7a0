#pragma once

#include <stdexcept>
#include <string>

namespace secrelay {

// Non-finite or out-of-range model parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain on which an operation is defined
// (e.g. a ratio value outside the bracket that contains the optimum).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Noise correlation with |phi| > 1, i.e. a covariance that is not PSD.
class PsdViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Gaussian with singular covariance: differential entropy is undefined.
class DegenerateDistribution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A relation that holds analytically failed numerically.
class InternalConsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bad ensemble/run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace secrelay
