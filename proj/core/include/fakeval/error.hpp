#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fakeval {

enum class ErrorCode {
  EmptyInput,
  MalformedRow,
  LabelOutOfDomain,
  ScoreOutOfRange,
  DuplicateId,
  ArgumentOutOfRange,
  DegenerateClass,
  DegenerateSamples,
  InvalidCurve,
  UnsortedTimestamps,
  MixedGroups,
  BoxOutsideImage,
  NonPositiveBox,
  AlreadyNormalized,
  ImageFormat,
  BadRatios,
  EmptyManifest,
  InconsistentAssignment,
  InputTooSmall,
  NonFiniteGradient,
  SizeMismatch,
  NonMonotoneEpochs,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every validation failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fakeval
