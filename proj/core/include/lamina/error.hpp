#pragma once

#include <stdexcept>
#include <string>

namespace lamina {

enum class ErrorCode {
  kIllDefinedAtAlpha,
  kIllDefinedAtOrbitPoint,
  kNoPeriodicPoint,
  kIllDefined,
  kPeriodicAlpha,
  kDepthLimited,
  kEmptySet,
  kFullCircleInput,
  kNotInSet,
  kIllDefinedLeaf,
  kAmbiguousAtBoundary,
  kZeroSeparation,
  kDegenerateSupport,
  kOnBoundary,
  kNonMonotonePairing,
  kSearchExhausted,
  kBudgetExceeded,
  kUnsupported,
  kInvalidArgument,
};

const char* error_name(ErrorCode code);

// Budget errors map to exit code 3, everything else raised by the library is
// a precondition failure (exit code 2).
bool is_budget_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, long index = -1)
      : std::runtime_error(std::move(message)), code_(code), index_(index) {}

  ErrorCode code() const { return code_; }
  // Step, digit or word index carried by errors that identify a position;
  // -1 when not applicable.
  long index() const { return index_; }

 private:
  ErrorCode code_;
  long index_;
};

}  // namespace lamina
