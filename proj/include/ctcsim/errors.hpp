#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctcsim {

// Operand dimensions or subsystem shapes do not agree.
class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitian : public std::invalid_argument {
 public:
  NotHermitian(const std::string& what, double max_deviation)
      : std::invalid_argument(what), max_deviation_(max_deviation) {}
  double max_deviation() const noexcept { return max_deviation_; }

 private:
  double max_deviation_;
};

// A value failed its type invariants (normalization, positivity, unitarity).
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownName : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A post-selected history has vanishing weight: the requested evolution
// is inconsistent and is suppressed.
class ParadoxError : public std::runtime_error {
 public:
  ParadoxError(const std::string& what, double weight)
      : std::runtime_error(what), weight_(weight) {}
  double weight() const noexcept { return weight_; }

 private:
  double weight_;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double residual, std::size_t iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

}  // namespace ctcsim
