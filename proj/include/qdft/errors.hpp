#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace qdft {

/// Base of every error raised by the library. Carries the name of the module
/// that detected the problem so the CLI can report it.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error("[" + module + "] " + message),
        module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::string module, std::size_t line, const std::string& message)
      : Error(std::move(module),
              (line ? "line " + std::to_string(line) + ": " : std::string()) +
                  message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class BoundsError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A caller broke a documented precondition (dimension mismatch, bad length).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Invalid active-space or sector specification.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// The system is outside what the solver supports (open shell, degenerate
/// Fermi level).
class UnsupportedSystem : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An operator lacks the parity symmetry needed for two-qubit reduction.
class NotReducibleError : public Error {
 public:
  using Error::Error;
};

class EmbeddedSolverError : public Error {
 public:
  EmbeddedSolverError(int iteration, const std::string& message)
      : Error("embedding",
              "iteration " + std::to_string(iteration) + ": " + message),
        iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

class DegenerateReference : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ScanFailed : public Error {
 public:
  using Error::Error;
};

class ReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdft
