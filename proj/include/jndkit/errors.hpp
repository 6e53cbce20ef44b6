#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jndkit {

enum class ErrorCode {
  DimensionMismatch,
  EncodeFailure,
  DecodeFailure,
  Io,
  LevelOutOfRange,
  InvalidArgument,
  RenderFailure,
  MissingProvider,
  MissingFile,
  NonMonotoneLevels,
  EmptyLadder,
  Transport,
  RateLimited,
  CacheMiss,
  PayloadTooLarge,
  ProviderUnavailable,
  ZeroVector,
  Unresolvable,
  CheckerUnavailable,
  PerceiverFailure,
  EmptyInput,
  InsufficientData,
  EmptyJournal,
  ChecksumMismatch,
  MalformedManifest,
  CorruptJournalTail,
  MalformedJournal,
  IncompleteQuiz,
  IllegalTransition,
  NotFound,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the toolkit. The code is
/// stable and used by the CLI and the study service to choose exit codes and
/// HTTP statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace jndkit
