#pragma once

#include <stdexcept>
#include <string>

namespace modalkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MODALKIT_DEFINE_ERROR(Name) \
  class Name : public Error {       \
   public:                          \
    using Error::Error;             \
  }

// exactmath
MODALKIT_DEFINE_ERROR(CompositeModulus);
MODALKIT_DEFINE_ERROR(FieldMismatch);
MODALKIT_DEFINE_ERROR(ZeroInverse);
MODALKIT_DEFINE_ERROR(DivisionByZero);
MODALKIT_DEFINE_ERROR(ParseError);

// linalg
MODALKIT_DEFINE_ERROR(NotSquare);
MODALKIT_DEFINE_ERROR(DimensionMismatch);

// mqt_core
MODALKIT_DEFINE_ERROR(ZeroVector);
MODALKIT_DEFINE_ERROR(SingularEvolution);
MODALKIT_DEFINE_ERROR(EnumerationTooLarge);
MODALKIT_DEFINE_ERROR(InvalidMeasurement);

// verifiers
MODALKIT_DEFINE_ERROR(InstanceTooLarge);
MODALKIT_DEFINE_ERROR(InvalidProblem);
MODALKIT_DEFINE_ERROR(MalformedTable);

// nosignal
MODALKIT_DEFINE_ERROR(Infeasible);
MODALKIT_DEFINE_ERROR(DegenerateAnchors);
MODALKIT_DEFINE_ERROR(InfeasibleRegion);
MODALKIT_DEFINE_ERROR(NotUnique);
MODALKIT_DEFINE_ERROR(IncompleteBlock);

#undef MODALKIT_DEFINE_ERROR

}  // namespace modalkit
