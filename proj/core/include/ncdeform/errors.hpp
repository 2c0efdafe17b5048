#pragma once

#include <stdexcept>
#include <string>

namespace ncdeform {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built for different dimensions were combined.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A value left the domain where the formulas are real (negative radicand,
/// division by zero, degree beyond the truncation order, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

/// Malformed text for a scalar, rational or JSON term.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncdeform
