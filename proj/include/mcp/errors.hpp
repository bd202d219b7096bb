#pragma once

#include <stdexcept>
#include <string>

namespace mcp {

/// Invalid argument or violated operation precondition supplied by the caller.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The exact solver was asked for more than its budget allows.
class ExactnessUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructive step could not be completed (witness exhausted, no
/// perfect matching, embedding search exhausted, ...).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure inside a multi-stage pipeline. Carries the stage name so callers
/// can record where a desk-scale run gave up.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace mcp
