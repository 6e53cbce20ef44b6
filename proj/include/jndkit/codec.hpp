#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "jndkit/raster.hpp"

namespace jndkit {

using Bytes = std::vector<std::uint8_t>;

struct JpegResult {
  Bytes bytes;
  Raster decoded;

  std::size_t size_bytes() const noexcept { return bytes.size(); }
};

/// Baseline JPEG via libjpeg with the standard quality scaling; 4:2:0 chroma.
/// quality_factor must lie in [1, 100].
JpegResult encode_jpeg(const Raster& img, int quality_factor);
Raster decode_jpeg(std::span<const std::uint8_t> data);

Bytes encode_png(const Raster& img);
Raster decode_png(std::span<const std::uint8_t> data);

/// Decodes PNG or JPEG, chosen by the stream signature.
Raster decode_image(std::span<const std::uint8_t> data);

bool is_jpeg(std::span<const std::uint8_t> data) noexcept;
bool is_png(std::span<const std::uint8_t> data) noexcept;

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Raster read_image(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Raster& img);

}  // namespace jndkit
