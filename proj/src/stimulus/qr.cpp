#include "jndkit/qr.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <cstdlib>

#include "jndkit/errors.hpp"

namespace jndkit {

namespace {

// Level M rows of the standard block tables, indexed by version.
constexpr std::array<int, 41> kEccPerBlock = {-1, 10, 16, 26, 18, 24, 16, 18, 22, 22, 26, 30, 22, 22, 24,
                                              24, 28, 28, 26, 26, 26, 26, 28, 28, 28, 28, 28, 28, 28, 28,
                                              28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28};
constexpr std::array<int, 41> kBlockCount = {-1, 1,  1,  1,  2,  2,  4,  4,  4,  5,  5,  5,  8,  9,
                                             9,  10, 10, 11, 13, 14, 16, 17, 17, 18, 20, 21, 23, 25,
                                             26, 28, 29, 31, 33, 35, 37, 38, 40, 43, 45, 47, 49};
constexpr int kFormatEclBits = 0;  // level M

int raw_data_modules(int ver) {
  int result = (16 * ver + 128) * ver + 64;
  if (ver >= 2) {
    const int align = ver / 7 + 2;
    result -= (25 * align - 10) * align - 55;
    if (ver >= 7) result -= 36;
  }
  return result;
}

int data_codewords(int ver) { return raw_data_modules(ver) / 8 - kEccPerBlock[ver] * kBlockCount[ver]; }

std::vector<int> alignment_positions(int ver) {
  if (ver == 1) return {};
  const int align = ver / 7 + 2;
  const int size = ver * 4 + 17;
  const int step = ver == 32 ? 26 : (ver * 4 + align * 2 + 1) / (align * 2 - 2) * 2;
  std::vector<int> result;
  for (int i = 0, pos = size - 7; i < align - 1; ++i, pos -= step) result.insert(result.begin(), pos);
  result.insert(result.begin(), 6);
  return result;
}

std::uint8_t gf_multiply(std::uint8_t x, std::uint8_t y) {
  int z = 0;
  for (int i = 7; i >= 0; --i) {
    z = (z << 1) ^ ((z >> 7) * 0x11D);
    z ^= ((y >> i) & 1) * x;
  }
  return static_cast<std::uint8_t>(z);
}

std::vector<std::uint8_t> rs_divisor(int degree) {
  std::vector<std::uint8_t> result(degree, 0);
  result.back() = 1;
  std::uint8_t root = 1;
  for (int i = 0; i < degree; ++i) {
    for (std::size_t j = 0; j < result.size(); ++j) {
      result[j] = gf_multiply(result[j], root);
      if (j + 1 < result.size()) result[j] ^= result[j + 1];
    }
    root = gf_multiply(root, 0x02);
  }
  return result;
}

std::vector<std::uint8_t> rs_remainder(const std::vector<std::uint8_t>& data, const std::vector<std::uint8_t>& divisor) {
  std::vector<std::uint8_t> result(divisor.size(), 0);
  for (std::uint8_t b : data) {
    const std::uint8_t factor = b ^ result.front();
    result.erase(result.begin());
    result.push_back(0);
    for (std::size_t i = 0; i < result.size(); ++i) result[i] ^= gf_multiply(divisor[i], factor);
  }
  return result;
}

bool mask_bit(int mask, int x, int y) {
  switch (mask) {
    case 0: return (x + y) % 2 == 0;
    case 1: return y % 2 == 0;
    case 2: return x % 3 == 0;
    case 3: return (x + y) % 3 == 0;
    case 4: return (x / 3 + y / 2) % 2 == 0;
    case 5: return x * y % 2 + x * y % 3 == 0;
    case 6: return (x * y % 2 + x * y % 3) % 2 == 0;
    default: return ((x + y) % 2 + x * y % 3) % 2 == 0;
  }
}

}  // namespace

class QrBuilder {
 public:
  explicit QrBuilder(int ver) : ver_(ver), size_(ver * 4 + 17), modules_(size_ * size_), function_(size_ * size_) {}

  QrCode build(const std::vector<std::uint8_t>& codewords, std::optional<int> forced_mask) {
    draw_function_patterns();
    draw_codewords(codewords);
    int chosen = forced_mask.value_or(0);
    if (!forced_mask) {
      long best = LONG_MAX;
      for (int m = 0; m < 8; ++m) {
        apply_mask(m);
        draw_format(m);
        const long p = penalty();
        if (p < best) {
          best = p;
          chosen = m;
        }
        apply_mask(m);
      }
    }
    apply_mask(chosen);
    draw_format(chosen);
    return QrCode(ver_, chosen, size_, modules_);
  }

 private:
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * size_ + x; }

  void set_function(int x, int y, bool dark) {
    modules_[idx(x, y)] = dark;
    function_[idx(x, y)] = true;
  }

  void draw_finder(int cx, int cy) {
    for (int dy = -4; dy <= 4; ++dy)
      for (int dx = -4; dx <= 4; ++dx) {
        const int x = cx + dx, y = cy + dy;
        if (x < 0 || x >= size_ || y < 0 || y >= size_) continue;
        const int dist = std::max(std::abs(dx), std::abs(dy));
        set_function(x, y, dist != 2 && dist != 4);
      }
  }

  void draw_alignment(int cx, int cy) {
    for (int dy = -2; dy <= 2; ++dy)
      for (int dx = -2; dx <= 2; ++dx) set_function(cx + dx, cy + dy, std::max(std::abs(dx), std::abs(dy)) != 1);
  }

  void draw_function_patterns() {
    for (int i = 0; i < size_; ++i) {
      set_function(6, i, i % 2 == 0);
      set_function(i, 6, i % 2 == 0);
    }
    draw_finder(3, 3);
    draw_finder(size_ - 4, 3);
    draw_finder(3, size_ - 4);
    const auto align = alignment_positions(ver_);
    const int n = static_cast<int>(align.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if ((i == 0 && j == 0) || (i == 0 && j == n - 1) || (i == n - 1 && j == 0)) continue;
        draw_alignment(align[i], align[j]);
      }
    draw_format(0);  // reserves the area
    draw_version();
  }

  void draw_format(int mask) {
    const int data = kFormatEclBits << 3 | mask;
    int rem = data;
    for (int i = 0; i < 10; ++i) rem = (rem << 1) ^ ((rem >> 9) * 0x537);
    const int bits = (data << 10 | rem) ^ 0x5412;
    auto bit = [bits](int i) { return ((bits >> i) & 1) != 0; };
    for (int i = 0; i <= 5; ++i) set_function(8, i, bit(i));
    set_function(8, 7, bit(6));
    set_function(8, 8, bit(7));
    set_function(7, 8, bit(8));
    for (int i = 9; i < 15; ++i) set_function(14 - i, 8, bit(i));
    for (int i = 0; i < 8; ++i) set_function(size_ - 1 - i, 8, bit(i));
    for (int i = 8; i < 15; ++i) set_function(8, size_ - 15 + i, bit(i));
    set_function(8, size_ - 8, true);
  }

  void draw_version() {
    if (ver_ < 7) return;
    int rem = ver_;
    for (int i = 0; i < 12; ++i) rem = (rem << 1) ^ ((rem >> 11) * 0x1F25);
    const long bits = static_cast<long>(ver_) << 12 | rem;
    for (int i = 0; i < 18; ++i) {
      const bool b = ((bits >> i) & 1) != 0;
      const int a = size_ - 11 + i % 3;
      const int c = i / 3;
      set_function(a, c, b);
      set_function(c, a, b);
    }
  }

  void draw_codewords(const std::vector<std::uint8_t>& data) {
    std::size_t i = 0;
    const std::size_t total_bits = data.size() * 8;
    for (int right = size_ - 1; right >= 1; right -= 2) {
      if (right == 6) right = 5;
      for (int vert = 0; vert < size_; ++vert) {
        for (int j = 0; j < 2; ++j) {
          const int x = right - j;
          const bool upward = ((right + 1) & 2) == 0;
          const int y = upward ? size_ - 1 - vert : vert;
          if (!function_[idx(x, y)] && i < total_bits) {
            modules_[idx(x, y)] = ((data[i >> 3] >> (7 - (i & 7))) & 1) != 0;
            ++i;
          }
        }
      }
    }
  }

  void apply_mask(int mask) {
    for (int y = 0; y < size_; ++y)
      for (int x = 0; x < size_; ++x)
        if (!function_[idx(x, y)] && mask_bit(mask, x, y)) modules_[idx(x, y)] = !modules_[idx(x, y)];
  }

  long penalty() const {
    long result = 0;
    auto dark = [this](int x, int y) { return static_cast<bool>(modules_[idx(x, y)]); };
    for (int pass = 0; pass < 2; ++pass) {
      for (int a = 0; a < size_; ++a) {
        int run = 1;
        for (int b = 1; b <= size_; ++b) {
          const bool same = b < size_ && (pass == 0 ? dark(b, a) == dark(b - 1, a) : dark(a, b) == dark(a, b - 1));
          if (same) {
            ++run;
          } else {
            if (run >= 5) result += 3 + (run - 5);
            run = 1;
          }
        }
      }
    }
    for (int y = 0; y + 1 < size_; ++y)
      for (int x = 0; x + 1 < size_; ++x) {
        const bool c = dark(x, y);
        if (c == dark(x + 1, y) && c == dark(x, y + 1) && c == dark(x + 1, y + 1)) result += 3;
      }
    static constexpr std::array<bool, 11> kA = {true, false, true, true, true, false, true, false, false, false, false};
    static constexpr std::array<bool, 11> kB = {false, false, false, false, true, false, true, true, true, false, true};
    for (int a = 0; a < size_; ++a)
      for (int b = 0; b + 11 <= size_; ++b) {
        bool row_a = true, row_b = true, col_a = true, col_b = true;
        for (int k = 0; k < 11; ++k) {
          row_a = row_a && dark(b + k, a) == kA[k];
          row_b = row_b && dark(b + k, a) == kB[k];
          col_a = col_a && dark(a, b + k) == kA[k];
          col_b = col_b && dark(a, b + k) == kB[k];
        }
        result += 40 * (row_a + row_b + col_a + col_b);
      }
    long dark_count = 0;
    for (bool m : modules_) dark_count += m;
    const long total = static_cast<long>(size_) * size_;
    const long deviation = std::abs(dark_count * 20 - total * 10);
    result += (deviation / total) * 10;
    return result;
  }

  int ver_;
  int size_;
  std::vector<bool> modules_;
  std::vector<bool> function_;
};

QrCode QrCode::encode(std::string_view payload, std::optional<int> forced_mask) {
  if (forced_mask && (*forced_mask < 0 || *forced_mask > 7)) {
    fail(ErrorCode::InvalidArgument, "QR mask must be in [0, 7]");
  }
  int ver = 1;
  long needed_bits = 0;
  for (; ver <= 40; ++ver) {
    const int count_bits = ver <= 9 ? 8 : 16;
    needed_bits = 4 + count_bits + 8L * static_cast<long>(payload.size());
    if (payload.size() < (1UL << count_bits) && needed_bits <= data_codewords(ver) * 8L) break;
  }
  if (ver > 40) fail(ErrorCode::RenderFailure, "payload too long for a QR symbol");

  const int capacity_bits = data_codewords(ver) * 8;
  std::vector<bool> bits;
  auto append = [&bits](unsigned value, int len) {
    for (int i = len - 1; i >= 0; --i) bits.push_back(((value >> i) & 1) != 0);
  };
  append(0x4, 4);
  append(static_cast<unsigned>(payload.size()), ver <= 9 ? 8 : 16);
  for (unsigned char c : payload) append(c, 8);
  append(0, std::min(4, capacity_bits - static_cast<int>(bits.size())));
  append(0, (8 - static_cast<int>(bits.size() % 8)) % 8);
  for (unsigned pad = 0xEC; static_cast<int>(bits.size()) < capacity_bits; pad ^= 0xEC ^ 0x11) append(pad, 8);

  std::vector<std::uint8_t> data(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) data[i >> 3] |= static_cast<std::uint8_t>(bits[i] << (7 - (i & 7)));

  const int blocks = kBlockCount[ver];
  const int ecc_len = kEccPerBlock[ver];
  const int raw_codewords = raw_data_modules(ver) / 8;
  const int short_blocks = blocks - raw_codewords % blocks;
  const int short_len = raw_codewords / blocks;
  const auto divisor = rs_divisor(ecc_len);
  std::vector<std::vector<std::uint8_t>> split;
  for (int i = 0, k = 0; i < blocks; ++i) {
    const int dlen = short_len - ecc_len + (i < short_blocks ? 0 : 1);
    std::vector<std::uint8_t> block(data.begin() + k, data.begin() + k + dlen);
    k += dlen;
    const auto ecc = rs_remainder(block, divisor);
    if (i < short_blocks) block.push_back(0);
    block.insert(block.end(), ecc.begin(), ecc.end());
    split.push_back(std::move(block));
  }
  std::vector<std::uint8_t> interleaved;
  for (std::size_t i = 0; i < split[0].size(); ++i)
    for (int j = 0; j < blocks; ++j)
      if (i != static_cast<std::size_t>(short_len - ecc_len) || j >= short_blocks) interleaved.push_back(split[j][i]);

  return QrBuilder(ver).build(interleaved, forced_mask);
}

}  // namespace jndkit
