#pragma once

#include <stdexcept>
#include <string>

namespace strucnet {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A document or in-memory object violates a structural invariant
/// (bad JSON, self-loop edge, index out of range, inconsistent cover, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its stated domain
/// (graph not input-accessible, graph not acyclic, network not class Y, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search was refused because the instance exceeds the
/// documented size guard for that operation.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace strucnet
