#pragma once

#include <stdexcept>
#include <string>

namespace wavecs {

// Bad arguments from the caller: wrong sizes, out-of-range rates, and so on.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownFilterError : public InvalidArgument {
 public:
  explicit UnknownFilterError(const std::string& what)
      : InvalidArgument("unknown filter: " + what) {}
};

// Malformed or corrupt serialized data (payloads, PGM headers).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wavecs
