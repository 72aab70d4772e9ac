#pragma once

#include <stdexcept>
#include <string>

namespace relbgk {

/// Base class for every error raised by the solver library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Particle four-flow is not future-timelike (N^mu N_mu <= 0 or N^0 <= 0).
class NonTimelikeFlow : public Error {
 public:
  using Error::Error;
};

/// Aggregate flow A^mu of the mixture is not timelike.
class DegenerateFlow : public Error {
 public:
  using Error::Error;
};

/// The temperature relation has no root (quadrature too coarse for the data).
class NoSolution : public Error {
 public:
  using Error::Error;
};

/// Boundary data violates a_{i,l} > 0, nonnegativity, or the truncation rule.
class InvalidBoundary : public Error {
 public:
  using Error::Error;
};

/// Configuration document failed schema or physics validation.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace relbgk
