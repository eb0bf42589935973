#pragma once

#include <stdexcept>
#include <string>

namespace qkr {

// Argument outside the mathematical domain of a conversion or formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computation could not reach its requested precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lattice population reached the ladder boundary.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double boundary_population)
      : std::runtime_error(what), boundary_population_(boundary_population) {}
  double boundary_population() const { return boundary_population_; }

 private:
  double boundary_population_;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature or iteration failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qkr
