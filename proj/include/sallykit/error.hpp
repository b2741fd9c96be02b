#pragma once

#include <stdexcept>
#include <string>

namespace sallykit {

/// Base class for every failure raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different polynomial rings.
class RingMismatch : public Error {
 public:
  RingMismatch() : Error("ring mismatch") {}
};

/// A configurable resource cap (pairs, polynomial length, rounds) was hit.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical input failed (not Artinian, unit ideal, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace sallykit
