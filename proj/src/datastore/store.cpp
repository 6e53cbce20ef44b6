#include "jndkit/store.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "jndkit/errors.hpp"

namespace jndkit {

namespace fs = std::filesystem;

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) fail(ErrorCode::Io, "sha256 init failed");
  }
  void update(const void* data, std::size_t n) { EVP_DigestUpdate(ctx_.get(), data, n); }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), digest.data(), &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += kHex[digest[i] >> 4];
      out += kHex[digest[i] & 15];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(std::span<const std::uint8_t> data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.hex();
}

std::string sha256_hex(std::string_view text) {
  Sha256 h;
  h.update(text.data(), text.size());
  return h.hex();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

ContentStore::ContentStore(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

fs::path ContentStore::relative_path(std::string_view hash, std::string_view extension) const {
  if (hash.size() < 2) fail(ErrorCode::InvalidArgument, "hash too short");
  return fs::path(std::string(hash.substr(0, 2))) / (std::string(hash) + "." + std::string(extension));
}

fs::path ContentStore::path_for(std::string_view hash, std::string_view extension) const {
  return root_ / relative_path(hash, extension);
}

std::string ContentStore::put(std::span<const std::uint8_t> data, std::string_view extension) {
  const std::string hash = sha256_hex(data);
  const fs::path target = path_for(hash, extension);
  if (!fs::exists(target)) {
    const fs::path tmp = target.string() + ".tmp";
    write_file(tmp, data);
    fs::rename(tmp, target);
  }
  return hash;
}

bool ContentStore::contains(std::string_view hash, std::string_view extension) const {
  return fs::exists(path_for(hash, extension));
}

Bytes ContentStore::get(std::string_view hash, std::string_view extension) const {
  const fs::path p = path_for(hash, extension);
  Bytes data = read_file(p);
  if (sha256_hex(data) != hash) fail(ErrorCode::ChecksumMismatch, p.string());
  return data;
}

}  // namespace jndkit
