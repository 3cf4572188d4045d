#pragma once

#include <stdexcept>
#include <string>

namespace orbicover {

/// Input data that fails a schema or consistency rule (bad catalog, bad profile string, ...).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical invariant that must hold for valid input failed. Always a bug or corrupt data.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace orbicover
