#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsylv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or lengths that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (p = 0 for the Wallis factor,
/// a negative perturbation size, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An LU pivot fell below the singularity threshold.
class SingularOperatorError : public Error {
 public:
  SingularOperatorError(const std::string& what, std::ptrdiff_t pivot)
      : Error(what), pivot_(pivot) {}

  std::ptrdiff_t pivot() const noexcept { return pivot_; }

 private:
  std::ptrdiff_t pivot_;
};

/// The transpose Sylvester equation has no unique solution: the Kronecker
/// operator is singular, or equivalently a generalized eigenvalue pair
/// violates a_ii a_jj - b_ii b_jj != 0 / a_ii +- b_ii != 0.
class NotUniquelySolvableError : public SingularOperatorError {
 public:
  using SingularOperatorError::SingularOperatorError;
};

/// Gram-Schmidt lost a column (the sample is numerically dependent).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix text or an unreadable/unwritable file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsylv
