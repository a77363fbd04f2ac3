#pragma once

#include <stdexcept>
#include <string>

namespace bohm {

// Velocity evaluation at (or numerically too close to) a node of the wave.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Vortex-related request on coefficients whose vortex structure degenerates.
struct DegenerateVortexError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A structural quantity does not exist for the given parameter value.
struct DegenerateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parameter outside the mathematical domain of a formula.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Rotation statistics requested for an orbit that does not wind.
struct NonRotatingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by operations that require a completed trajectory.
struct SingularityAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bohm
