#pragma once

#include <stdexcept>
#include <string>

namespace grls {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are inconsistent (matrix/vector dimension mismatch).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input matrix does not have full column rank.
class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

/// A search region is empty.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Operation is only available for instances with n = 2, k = 1.
class UnsupportedInstanceError : public Error {
 public:
  using Error::Error;
};

}  // namespace grls
