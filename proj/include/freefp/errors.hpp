#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freefp {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The orthogonality condition of the one-interval singular integral
/// equation fails; no bounded solution exists.
class SolvabilityError : public std::runtime_error {
public:
  SolvabilityError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Failures raised while advancing the particle system.
class SimulationError : public std::runtime_error {
public:
  SimulationError(const std::string& what, double t)
      : std::runtime_error(what), time_(t) {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

class CollisionError : public SimulationError {
public:
  CollisionError(std::size_t index, double t)
      : SimulationError("particles " + std::to_string(index) + " and " +
                            std::to_string(index + 1) + " coincide",
                        t),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

class StiffnessError : public SimulationError {
public:
  StiffnessError(std::size_t pair, double t)
      : SimulationError("step halving limit reached at gap " +
                            std::to_string(pair),
                        t),
        pair_(pair) {}
  /// Left index of the adjacent pair whose gap kept collapsing.
  std::size_t pair() const noexcept { return pair_; }

private:
  std::size_t pair_;
};

class ConfinementError : public SimulationError {
public:
  using SimulationError::SimulationError;
};

class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " +
                              std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace freefp
