#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlcore {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Carries the 1-based line number (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A caller broke an operation precondition (empty set, vertex outside S, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Input is well formed but names something that does not exist.
class UnknownVertex : public Error {
 public:
  explicit UnknownVertex(const std::string& label)
      : Error("unknown vertex '" + label + "'") {}
};

// The computation has no answer on this input (edgeless graph, no community, ...).
class NoSolution : public Error {
 public:
  using Error::Error;
};

// An output or enumeration guard was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Iterative eigensolver ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::size_t iterations, double residual)
      : Error("power iteration did not converge after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

}  // namespace mlcore
