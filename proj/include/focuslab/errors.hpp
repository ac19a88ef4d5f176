#pragma once

#include <stdexcept>
#include <string>

namespace focuslab {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a map (e.g. log of a non-positive value).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A rescaled window covers too few samples to be meaningful.
class DegenerateWindow : public Error {
 public:
  using Error::Error;
};

// An integral that must be finite would diverge (support touching zero).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Entropy of an all-zero slice.
class UndefinedEntropy : public Error {
 public:
  using Error::Error;
};

// Scale grid inconsistent with the signal (band above Nyquist, etc.).
class InvalidGrid : public Error {
 public:
  using Error::Error;
};

// Malformed file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace focuslab
