#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed region, function, lattice or option values.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Raised by guarded operations (log of a nonpositive number, division by
/// zero, non-finite results) during expression evaluation.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A structural hypothesis of a construction failed on a probe.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class UnsupportedGeometry : public Error {
 public:
  using Error::Error;
};

class NotAWitness : public Error {
 public:
  using Error::Error;
};

class NoStrictDecreaseFound : public Error {
 public:
  using Error::Error;
};

class LimitViolated : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

}  // namespace rlab
