#pragma once

#include <stdexcept>
#include <string>

namespace mvoreg {

/// Base class for all recoverable failures raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown model name or malformed bounds entry.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV / JSON input. The message carries the file and line.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Invalid optimizer, split or experiment settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mvoreg
