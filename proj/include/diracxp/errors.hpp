#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diracxp {

// Base of everything the library throws. Callers that only care about
// "numerical pipeline failed" can catch this one type.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (pole of Gamma, b at a Kummer pole, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// A series or iteration exhausted its budget. `residual` is the last
// relative correction that was still being added.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string &what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

// Invalid user configuration (cutoff out of range, empty window, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

// An identity that must hold by construction was violated numerically.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

// The spectral phase decreased somewhere inside the scanned window.
class MonotonicityError : public Error {
public:
  MonotonicityError(const std::string &what, double energy)
      : Error(what), energy_(energy) {}
  double energy() const noexcept { return energy_; }

private:
  double energy_;
};

class IntegrationError : public Error {
public:
  using Error::Error;
};

class BracketError : public Error {
public:
  using Error::Error;
};

// Input outside the validated window of an approximation.
class RangeError : public Error {
public:
  using Error::Error;
};

// Quantity undefined because the evaluation point sits on (or within
// round-off of) a zero.
class NearZeroError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

} // namespace diracxp
