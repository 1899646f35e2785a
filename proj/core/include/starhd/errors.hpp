#pragma once

#include <stdexcept>
#include <string>

namespace starhd {

/// Base class for all starhd errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: mismatched hyperspaces, bad dimensionality,
/// unusable flag combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Operation applied outside its value domain (zero-norm similarity,
/// empty graph, untrained memory, single-class AUC input).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid data: edge endpoints out of range, label vectors of
/// the wrong length, empty datasets.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; the message carries file and line context.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Dataset download or archive extraction failure.
class FetchError : public Error {
 public:
  using Error::Error;
};

/// Filesystem read/write failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace starhd
