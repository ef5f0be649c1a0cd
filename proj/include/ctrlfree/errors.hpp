#pragma once

#include <stdexcept>
#include <string>

namespace ctrlfree {

/// An input violated a documented invariant (non-unitary matrix, bad norm,
/// eigenpair residual too large, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments are inconsistent with each other (dimension mismatch, unknown
/// wire, out-of-range parameter).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested object would exceed the configured dense-size caps.
class ResourceLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace ctrlfree
