#pragma once

#include <stdexcept>
#include <string>

namespace eswap {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// State construction / normalization.
class ZeroNormError : public Error {
 public:
  using Error::Error;
};
class NotNormalizableError : public Error {
 public:
  using Error::Error;
};

// Shape and indexing.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};
class BadIndexError : public Error {
 public:
  using Error::Error;
};
class BadSubsetError : public Error {
 public:
  using Error::Error;
};
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Density-matrix validity.
class NotPositiveError : public Error {
 public:
  using Error::Error;
};

// Sampling / tomography.
class BadBasisError : public Error {
 public:
  using Error::Error;
};
class MissingBasisError : public Error {
 public:
  using Error::Error;
};
class SingularError : public Error {
 public:
  using Error::Error;
};

// CLI / runner.
class ConfigError : public Error {
 public:
  using Error::Error;
};
class UnknownSuiteError : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eswap
