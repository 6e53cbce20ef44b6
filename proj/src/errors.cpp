#include "jndkit/errors.hpp"

namespace jndkit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EncodeFailure: return "EncodeFailure";
    case ErrorCode::DecodeFailure: return "DecodeFailure";
    case ErrorCode::Io: return "Io";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RenderFailure: return "RenderFailure";
    case ErrorCode::MissingProvider: return "MissingProvider";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::NonMonotoneLevels: return "NonMonotoneLevels";
    case ErrorCode::EmptyLadder: return "EmptyLadder";
    case ErrorCode::Transport: return "Transport";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::CacheMiss: return "CacheMiss";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::Unresolvable: return "Unresolvable";
    case ErrorCode::CheckerUnavailable: return "CheckerUnavailable";
    case ErrorCode::PerceiverFailure: return "PerceiverFailure";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::EmptyJournal: return "EmptyJournal";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
    case ErrorCode::CorruptJournalTail: return "CorruptJournalTail";
    case ErrorCode::MalformedJournal: return "MalformedJournal";
    case ErrorCode::IncompleteQuiz: return "IncompleteQuiz";
    case ErrorCode::IllegalTransition: return "IllegalTransition";
    case ErrorCode::NotFound: return "NotFound";
  }
  return "Unknown";
}

}  // namespace jndkit
