#pragma once

#include <stdexcept>
#include <string>

namespace nrefl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose shapes, orders or tensor legs do not fit together.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit a pole of a spectral function (r-matrix, weight, Mobius map, ...).
class PoleError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A case or model was built with parameters violating a stated relation.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Floating-point failure during simulation (NaN / Inf).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace nrefl
