#pragma once

#include <stdexcept>
#include <string>

namespace gaborcert {

// Base class for every error raised by the library. Callers that only care
// about "something went wrong" catch this; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// inv_sup_on_core: a + eps >= b - eps.
class EmptyCore : public Error {
 public:
  using Error::Error;
};

// fourier_decay_fit: not enough usable frequencies.
class DegenerateFit : public Error {
 public:
  using Error::Error;
};

// A standing assumption (alpha*beta < 1, alpha < b - a, ...) does not hold.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

// Block decomposition could not return to the certified interval.
class HopNotFound : public Error {
 public:
  using Error::Error;
};

class TooCloseToForbiddenRatio : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or window descriptor.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaborcert
