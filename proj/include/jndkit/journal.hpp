#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "jndkit/ladder.hpp"

namespace jndkit {

/// Timestamp source for journal records.
using Clock = std::function<std::string()>;

/// UTC wall time, ISO 8601 with milliseconds.
Clock system_clock();
/// 1970-01-01T00:00:00Z advancing one second per call; makes journals
/// byte-reproducible.
Clock logical_clock();

struct JournalReadResult {
  std::vector<nlohmann::json> records;
  /// Bytes of an incomplete or unparsable final line that were ignored.
  std::size_t discarded_tail_bytes = 0;
  /// Offset just past the last good record.
  std::uintmax_t good_size = 0;
};

enum class TailPolicy { Recover, Strict };

/// Parses newline-delimited records. A bad final line is dropped (Recover)
/// or raises CorruptJournalTail (Strict); a bad line elsewhere, or sequence
/// numbers that do not strictly increase, raise MalformedJournal.
JournalReadResult read_journal(const std::filesystem::path& path, TailPolicy policy = TailPolicy::Recover);

/// Append-only writer. Every record gets "seq" and "ts" fields and is
/// flushed before append() returns. Opening an existing journal truncates a
/// damaged tail and continues the sequence.
class Journal {
 public:
  Journal(const std::filesystem::path& path, Clock clock = system_clock());
  ~Journal();
  Journal(const Journal&) = delete;
  Journal& operator=(const Journal&) = delete;

  /// Returns the sequence number assigned to the record.
  std::uint64_t append(const std::string& type, nlohmann::json body);

  /// Runs after each record is durable; used by crash-injection tests.
  void set_after_append(std::function<void(const nlohmann::json&)> hook) { after_append_ = std::move(hook); }

  /// Records present when the journal was opened.
  const std::vector<nlohmann::json>& existing() const noexcept { return existing_; }
  std::size_t recovered_tail_bytes() const noexcept { return recovered_tail_bytes_; }
  std::uint64_t next_seq() const noexcept { return next_seq_; }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  Clock clock_;
  std::FILE* file_ = nullptr;
  std::uint64_t next_seq_ = 1;
  std::vector<nlohmann::json> existing_;
  std::size_t recovered_tail_bytes_ = 0;
  std::function<void(const nlohmann::json&)> after_append_;
};

/// Last confirmed anchor per (reference, kind) for a run; 0 when no JND has
/// been confirmed yet.
std::map<std::pair<std::string, DistortionKind>, int> resume_points(const std::vector<nlohmann::json>& records,
                                                                    const std::string& run_id);
int resume_point(const std::vector<nlohmann::json>& records, const std::string& run_id,
                 const std::string& reference_id, DistortionKind kind);

}  // namespace jndkit
