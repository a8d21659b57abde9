#pragma once

#include <stdexcept>
#include <string>

namespace it2fls {

/// Invalid function or set parameters (unordered abscissae, bad heights, non-positive stds).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A set whose lower envelope exceeds its upper envelope somewhere on the grid.
class ConstraintError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operands live on different universes of discourse.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Centroid requested for weights that are identically zero.
class UndefinedCentroid : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No rule contributed to an output (every upper firing strength is zero).
class NoRuleFired : public std::runtime_error {
 public:
  explicit NoRuleFired(const std::string& output)
      : std::runtime_error("no rule fired for output '" + output + "'"), output_(output) {}
  const std::string& output() const noexcept { return output_; }

 private:
  std::string output_;
};

/// An iterative routine failed to converge within its iteration bound.
class AlgorithmFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed system definition, rule or configuration entry.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace it2fls
