#pragma once

#include <stdexcept>
#include <string>

namespace algpos {

/// Base class for every recoverable domain error in this library.
/// Callers that only care about "it failed" can catch this one.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define ALGPOS_DEFINE_ERROR(Name)             \
  struct Name : Error {                       \
    explicit Name(const std::string& what)    \
        : Error(std::string(#Name ": ") + what) {} \
  }

// sign_pattern
ALGPOS_DEFINE_ERROR(BadToken);
ALGPOS_DEFINE_ERROR(NonSquare);
ALGPOS_DEFINE_ERROR(OrderMismatch);
ALGPOS_DEFINE_ERROR(BadPermutation);
ALGPOS_DEFINE_ERROR(NonpositiveMagnitude);

// structure
ALGPOS_DEFINE_ERROR(NotMinimallyStronglyConnected);
ALGPOS_DEFINE_ERROR(HasLoop);
ALGPOS_DEFINE_ERROR(ComponentMismatch);
ALGPOS_DEFINE_ERROR(NotApIrreducible);
ALGPOS_DEFINE_ERROR(ExtractionFailed);

// constructions
ALGPOS_DEFINE_ERROR(SignPrecondition);
ALGPOS_DEFINE_ERROR(DegenerateInput);
ALGPOS_DEFINE_ERROR(BadVariantIndices);
ALGPOS_DEFINE_ERROR(EpsilonOutOfRange);
ALGPOS_DEFINE_ERROR(InequalityViolated);
ALGPOS_DEFINE_ERROR(HypothesisViolated);
ALGPOS_DEFINE_ERROR(ShapeMismatch);
ALGPOS_DEFINE_ERROR(ZeroPivot);

// spectral
ALGPOS_DEFINE_ERROR(NumericalFailure);
ALGPOS_DEFINE_ERROR(NotSimple);
ALGPOS_DEFINE_ERROR(NumericallySingular);
ALGPOS_DEFINE_ERROR(NotSuperpattern);
ALGPOS_DEFINE_ERROR(EpsilonExhausted);

// realizer
ALGPOS_DEFINE_ERROR(NegativeDiagonal);
ALGPOS_DEFINE_ERROR(PreconditionViolated);
ALGPOS_DEFINE_ERROR(EngineInvariantBroken);
ALGPOS_DEFINE_ERROR(HypothesisFails);

#undef ALGPOS_DEFINE_ERROR

}  // namespace algpos
