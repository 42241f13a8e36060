#pragma once

#include <stdexcept>
#include <string>

namespace groupoid_lab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Codomain of the first arrow differs from the domain of the second.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// Operation needs a capability (pointed, reflexive coequalizers, ...) the instance lacks.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Object or morphism data that violates the axioms of its base instance.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Diagram whose edges do not type-check against its nodes.
class DiagramError : public Error {
 public:
  using Error::Error;
};

/// Cone that does not factor through a limit.
class NoMediatorError : public Error {
 public:
  using Error::Error;
};

/// A property the library guarantees was found false. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace groupoid_lab
