#include "fakeval/error.hpp"

namespace fakeval {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::LabelOutOfDomain: return "LabelOutOfDomain";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::ArgumentOutOfRange: return "ArgumentOutOfRange";
    case ErrorCode::DegenerateClass: return "DegenerateClass";
    case ErrorCode::DegenerateSamples: return "DegenerateSamples";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::UnsortedTimestamps: return "UnsortedTimestamps";
    case ErrorCode::MixedGroups: return "MixedGroups";
    case ErrorCode::BoxOutsideImage: return "BoxOutsideImage";
    case ErrorCode::NonPositiveBox: return "NonPositiveBox";
    case ErrorCode::AlreadyNormalized: return "AlreadyNormalized";
    case ErrorCode::ImageFormat: return "ImageFormat";
    case ErrorCode::BadRatios: return "BadRatios";
    case ErrorCode::EmptyManifest: return "EmptyManifest";
    case ErrorCode::InconsistentAssignment: return "InconsistentAssignment";
    case ErrorCode::InputTooSmall: return "InputTooSmall";
    case ErrorCode::NonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NonMonotoneEpochs: return "NonMonotoneEpochs";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace fakeval
