#pragma once

#include <stdexcept>
#include <string>

namespace subseg {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Caller passed data that violates an operation's preconditions
// (empty word, empty corpus, ...).
class InvalidInputError : public Error {
public:
  using Error::Error;
};

// Bad configuration value (probability outside [0,1], zero samples, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Malformed file or stream content. Carries location context in the message.
class ParseError : public Error {
public:
  using Error::Error;
};

// Requested value lies outside the achievable range. Used by calibration.
class RangeError : public Error {
public:
  RangeError(const std::string& what, double lo, double hi)
      : Error(what), achievable_min(lo), achievable_max(hi) {}

  double achievable_min;
  double achievable_max;
};

}  // namespace subseg
