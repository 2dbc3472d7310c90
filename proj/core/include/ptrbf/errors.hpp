#pragma once

#include <stdexcept>
#include <string>

namespace ptrbf {

/// Invalid scalar argument (negative variance, nonpositive rate, bad M, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operand shapes do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed variance collapsed to zero (single-point cluster, identical
/// constellation centers) or a dataset has no spread to normalize.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Initialization scheme cannot be applied to the requested architecture.
class UnsupportedSchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation's precondition in a way that is not a plain
/// shape mismatch (e.g. a stale forward trace handed to backprop).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// File or format failure; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptrbf
