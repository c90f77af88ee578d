#pragma once

#include <stdexcept>
#include <string>

namespace entropic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point does not belong to the domain it is used with.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Resolution, tolerance or other configuration below its admissible minimum.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (weights, sites, parameters).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A measure or density without mass.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this domain kind.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver stopped without reaching its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace entropic
