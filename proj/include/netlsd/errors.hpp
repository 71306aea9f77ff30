#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netlsd {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter combination.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Problem too large for the requested dense code path.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver ran out of its iteration budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, long iterations, double worst_residual)
      : Error(msg + " (iterations=" + std::to_string(iterations) +
              ", worst residual=" + std::to_string(worst_residual) + ")"),
        iterations_(iterations),
        worst_residual_(worst_residual) {}
  long iterations() const { return iterations_; }
  double worst_residual() const { return worst_residual_; }

 private:
  long iterations_;
  double worst_residual_;
};

/// Signatures or collections with mismatched metadata.
class IncompatibilityError : public Error {
 public:
  using Error::Error;
};

/// File system or stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace netlsd
