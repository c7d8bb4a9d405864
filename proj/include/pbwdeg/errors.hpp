#pragma once

#include <stdexcept>
#include <string>

namespace pbwdeg {

/// Base of all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid input supplied by a caller (bad type string, bad weight, ...).
class UserError : public Error {
  public:
    using Error::Error;
};

class UnsupportedType : public UserError {
  public:
    using UserError::UserError;
};

class DimensionMismatch : public UserError {
  public:
    using UserError::UserError;
};

class NotPrime : public UserError {
  public:
    explicit NotPrime(long long p)
        : UserError("not a prime: " + std::to_string(p)) {}
};

class InvalidArgument : public UserError {
  public:
    using UserError::UserError;
};

/// A computation would exceed the configured module-size ceiling.
class SizeCeilingExceeded : public Error {
  public:
    SizeCeilingExceeded(long long required, long long ceiling)
        : Error("module dimension " + std::to_string(required) +
                " exceeds size ceiling " + std::to_string(ceiling) +
                " (raise it with --ceiling)"),
          required_(required), ceiling_(ceiling) {}
    long long required() const { return required_; }
    long long ceiling() const { return ceiling_; }

  private:
    long long required_;
    long long ceiling_;
};

/// Internal defect signals. These indicate a bug, never bad input.
class DefectError : public Error {
  public:
    using Error::Error;
};

/// A divided power M^k/k! had a non-integral entry: the lattice is not
/// stable under the operator.
class NonIntegralDividedPower : public DefectError {
  public:
    using DefectError::DefectError;
};

/// The rank of a constructed lattice disagrees with the Weyl dimension.
class RankMismatch : public DefectError {
  public:
    RankMismatch(long long got, long long expected)
        : DefectError("lattice rank " + std::to_string(got) +
                      " differs from Weyl dimension " +
                      std::to_string(expected)) {}
};

} // namespace pbwdeg
