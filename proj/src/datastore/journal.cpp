#include "jndkit/journal.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

#include "jndkit/errors.hpp"

namespace jndkit {

namespace fs = std::filesystem;
using nlohmann::json;

Clock system_clock() {
  return [] {
    const auto now = std::chrono::system_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    const std::size_t n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    std::snprintf(buf + n, sizeof buf - n, ".%03dZ", static_cast<int>(ms));
    return std::string(buf);
  };
}

Clock logical_clock() {
  auto tick = std::make_shared<std::time_t>(0);
  return [tick] {
    std::tm tm{};
    const std::time_t t = (*tick)++;
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
  };
}

JournalReadResult read_journal(const fs::path& path, TailPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();

  JournalReadResult out;
  std::size_t pos = 0;
  std::int64_t last_seq = 0;
  std::size_t line_no = 0;
  while (pos < data.size()) {
    ++line_no;
    const std::size_t nl = data.find('\n', pos);
    const bool terminated = nl != std::string::npos;
    const std::size_t end = terminated ? nl : data.size();
    const std::string_view line(data.data() + pos, end - pos);
    const std::size_t next = terminated ? nl + 1 : data.size();

    const auto tail = [&](const std::string& why) {
      if (policy == TailPolicy::Strict)
        fail(ErrorCode::CorruptJournalTail, path.string() + " line " + std::to_string(line_no) + ": " + why);
      out.discarded_tail_bytes = data.size() - pos;
    };

    if (!terminated) {
      tail("record not newline-terminated");
      break;
    }
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      if (next == data.size()) {
        tail(e.what());
        break;
      }
      fail(ErrorCode::MalformedJournal, path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!record.is_object() || !record.contains("seq") || !record["seq"].is_number_integer())
      fail(ErrorCode::MalformedJournal, path.string() + " line " + std::to_string(line_no) + ": missing seq");
    const auto seq = record["seq"].get<std::int64_t>();
    if (seq <= last_seq)
      fail(ErrorCode::MalformedJournal, path.string() + " line " + std::to_string(line_no) + ": seq not increasing");
    last_seq = seq;
    out.records.push_back(std::move(record));
    pos = next;
    out.good_size = pos;
  }
  return out;
}

Journal::Journal(const fs::path& path, Clock clock) : path_(path), clock_(std::move(clock)) {
  if (!path_.parent_path().empty()) fs::create_directories(path_.parent_path());
  if (fs::exists(path_)) {
    auto read = read_journal(path_, TailPolicy::Recover);
    if (read.discarded_tail_bytes > 0) {
      fs::resize_file(path_, read.good_size);
      recovered_tail_bytes_ = read.discarded_tail_bytes;
    }
    existing_ = std::move(read.records);
    if (!existing_.empty()) next_seq_ = existing_.back()["seq"].get<std::uint64_t>() + 1;
  }
  file_ = std::fopen(path_.c_str(), "ab");
  if (file_ == nullptr) fail(ErrorCode::Io, "cannot open journal " + path_.string());
}

Journal::~Journal() {
  if (file_ != nullptr) std::fclose(file_);
}

std::uint64_t Journal::append(const std::string& type, json body) {
  if (!body.is_object()) fail(ErrorCode::InvalidArgument, "journal record body must be an object");
  const std::uint64_t seq = next_seq_;
  body["seq"] = seq;
  body["ts"] = clock_();
  body["type"] = type;
  const std::string line = body.dump() + "\n";
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0)
    fail(ErrorCode::Io, "write failed on " + path_.string());
  ++next_seq_;
  if (after_append_) after_append_(body);
  return seq;
}

std::map<std::pair<std::string, DistortionKind>, int> resume_points(const std::vector<json>& records,
                                                                    const std::string& run_id) {
  std::map<std::pair<std::string, DistortionKind>, int> out;
  for (const auto& r : records) {
    if (r.value("type", "") != "anchor" || r.value("run", "") != run_id) continue;
    const auto kind = parse_distortion_kind(r.at("kind").get<std::string>());
    if (!kind) fail(ErrorCode::MalformedJournal, "unknown kind in anchor record");
    int& slot = out[{r.at("reference").get<std::string>(), *kind}];
    slot = std::max(slot, r.at("anchor").get<int>());
  }
  return out;
}

int resume_point(const std::vector<json>& records, const std::string& run_id, const std::string& reference_id,
                 DistortionKind kind) {
  const auto points = resume_points(records, run_id);
  const auto it = points.find({reference_id, kind});
  return it == points.end() ? 0 : it->second;
}

}  // namespace jndkit
