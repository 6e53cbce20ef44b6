#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace jndkit {

/// A QR Code symbol (byte mode, error correction level M), as a square grid
/// of modules; true is dark.
class QrCode {
 public:
  int version() const noexcept { return version_; }
  int size() const noexcept { return size_; }
  int mask() const noexcept { return mask_; }
  bool module(int x, int y) const noexcept { return modules_[static_cast<std::size_t>(y) * size_ + x]; }

  /// Smallest version that fits the payload. When `forced_mask` is empty the
  /// mask with the lowest penalty score is chosen. Throws RenderFailure when
  /// the payload exceeds version 40 capacity.
  static QrCode encode(std::string_view payload, std::optional<int> forced_mask = std::nullopt);

 private:
  friend class QrBuilder;
  QrCode(int version, int mask, int size, std::vector<bool> modules)
      : version_(version), size_(size), mask_(mask), modules_(std::move(modules)) {}

  int version_;
  int size_;
  int mask_;
  std::vector<bool> modules_;
};

}  // namespace jndkit
