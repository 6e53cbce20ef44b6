#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "jndkit/codec.hpp"

namespace jndkit {

std::string sha256_hex(std::span<const std::uint8_t> data);
std::string sha256_hex(std::string_view text);
std::string sha256_file(const std::filesystem::path& path);

/// Content-addressed files: <root>/<first two hex digits>/<hash>.<ext>.
class ContentStore {
 public:
  explicit ContentStore(std::filesystem::path root);
  /// Writes the bytes unless already present; returns the hash.
  std::string put(std::span<const std::uint8_t> data, std::string_view extension);
  std::filesystem::path path_for(std::string_view hash, std::string_view extension) const;
  /// Relative form used in indexes.
  std::filesystem::path relative_path(std::string_view hash, std::string_view extension) const;
  bool contains(std::string_view hash, std::string_view extension) const;
  /// Reads and verifies; ChecksumMismatch when the file was altered.
  Bytes get(std::string_view hash, std::string_view extension) const;
  const std::filesystem::path& root() const noexcept { return root_; }

 private:
  std::filesystem::path root_;
};

}  // namespace jndkit
