#pragma once

#include <stdexcept>
#include <string>

namespace orbitclock {

// Invalid physical input (bad apsides, negative mass, odd step count, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A run configuration violates a stated constraint (Nyquist, bin alignment,
// missing preset, ...). Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative method failed to converge. Carries the last residual.
// Maps to CLI exit code 3.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace orbitclock
