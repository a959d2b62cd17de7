#pragma once

#include <stdexcept>
#include <string>

namespace mfsteiner {

// Every error raised by the library derives from Error, so callers that only
// care about "something in mfsteiner failed" can catch a single type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (u >= 1 for an
// inverse CDF, a self-loop vertex pair, n < 2 for a logarithm, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Requested object does not fit the configured memory cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Exact algorithm asked to run beyond its configured capability
// (terminal count above k_max, enumeration budget, brute-force size).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Ball or annulus target size larger than the vertex pool it grows in.
class InfeasibleSize : public Error {
 public:
  using Error::Error;
};

// Moment generating function evaluated at or beyond a rate.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Hypothesis of a lemma check not satisfied by the supplied parameters.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfsteiner
