#pragma once

#include <stdexcept>
#include <string>

namespace qchain {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// No numerator parameter of a basic hypergeometric series is q^{-m}.
class NonTerminating : public Error {
public:
  using Error::Error;
};

/// A denominator q-shifted factorial vanishes before the series terminates.
class DenominatorZero : public Error {
public:
  using Error::Error;
};

class PoleAtOne : public Error {
public:
  using Error::Error;
};

/// q^{-1} is not a quotient of two odd integers, so no exact transfer time exists.
class NotOddOdd : public Error {
public:
  using Error::Error;
};

class NonRationalSpectrum : public Error {
public:
  using Error::Error;
};

class PhaseConditionUnmet : public Error {
public:
  using Error::Error;
};

class NegativeRadicand : public Error {
public:
  using Error::Error;
};

/// The symmetric tridiagonal eigensolver hit its iteration cap.
class NoConvergence : public Error {
public:
  using Error::Error;
};

/// A floating time is too large for its phase to be meaningful.
class TimeBoundExceeded : public Error {
public:
  using Error::Error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace qchain
