#pragma once

#include <stdexcept>
#include <string>

namespace hierflow {

struct SingularNormalization : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularPropagator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SymmetryViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSubstitution : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed run configuration; carries the offending line (0 if from a flag).
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line(line) {}
  int line;
};

}  // namespace hierflow
