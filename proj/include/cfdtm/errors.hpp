#pragma once

#include <stdexcept>
#include <string>

namespace cfdtm {

// Series with different alpha or t0 were combined.
class CompatibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A power (t - t0)^p or shift beta/alpha does not land on the alpha-grid.
class RepresentabilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation outside t >= t0, or too close to t0 for the oracle.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class LengthError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cfdtm
