#pragma once

#include <stdexcept>
#include <string>

namespace coaudit {

/// Base for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad run configuration, lexicon, baseline or CLI input. Fatal for a run.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A file exists but its contents are not in the expected format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Two matrices from incompatible runs were combined.
class MismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace coaudit
