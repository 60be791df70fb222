#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morrey {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive refinement ran out of budget before meeting its tolerance.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// An integrand or weight produced a negative or NaN value.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A tail/head norm hit 0 or +inf where the weight class forbids it.
class ClassViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateWeight : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis was checked and reported as not satisfied.
class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A parsed weight evaluates to a non-positive value; `witness()` is such a point.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double witness)
      : Error(what), witness_(witness) {}

  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

}  // namespace morrey
