#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypergm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Malformed or inadmissible input (bad arrangement, bad literal, bad flag).
class ValidationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validation"; }
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* kind() const noexcept override { return "parse"; }
};

/// A linear system with no solution; `row()` is the offending equation.
class InconsistentSystem : public Error {
 public:
  InconsistentSystem(std::size_t row, const std::string& what)
      : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }
  const char* kind() const noexcept override { return "inconsistent"; }

 private:
  std::size_t row_;
};

/// Sampled data is not affine-linear in the weights.
class NonlinearInWeights : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "nonlinear_in_weights"; }
};

/// A rational form that is not a combination of logarithmic wedges.
class NotLogarithmic : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* kind() const noexcept override { return "not_logarithmic"; }
};

/// Integral weights, integral flat sums, or resonant residue eigenvalues.
class ResonanceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resonance"; }
};

/// A self-check failed (held-out fit, closed form vs numeric, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "consistency"; }
};

}  // namespace hypergm
