#pragma once

#include <stdexcept>
#include <string>

namespace ghp {

// Every failure raised by the library derives from Error. The CLI maps the
// concrete kind onto its exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (u not in (0,1),
// tau below 1/2 for the closed-form covariance, divergent series, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed caller input: length mismatches, non-ascending sequences.
class InputError : public Error {
 public:
  using Error::Error;
};

// Data that cannot feed the estimators: too few values, non-positive values,
// degenerate (all tied) samples.
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid model specification or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A numerical routine could not reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A weight or model variant that the requested operation cannot handle.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace ghp
