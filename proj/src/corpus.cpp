#include "lpesr/corpus.hpp"

#include <algorithm>
#include <fstream>

#include <openssl/evp.h>

#include "lpesr/error.hpp"
#include "lpesr/image_io.hpp"

namespace lpesr {

namespace fs = std::filesystem;

std::vector<fs::path> list_images(const fs::path& dir_or_manifest) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (fs::is_directory(dir_or_manifest, ec)) {
    for (const auto& entry : fs::directory_iterator(dir_or_manifest, ec))
      if (entry.is_regular_file() && has_image_extension(entry.path())) out.push_back(entry.path());
    if (ec) throw Error(Errc::io, "cannot list " + dir_or_manifest.string() + ": " + ec.message());
    std::sort(out.begin(), out.end());
    return out;
  }
  std::ifstream in(dir_or_manifest);
  if (!in) throw Error(Errc::io, "cannot open corpus " + dir_or_manifest.string());
  const fs::path base = dir_or_manifest.parent_path();
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    fs::path p(line);
    out.push_back(p.is_absolute() ? p : base / p);
  }
  return out;
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> bytes) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(), nullptr) || len != out.size())
    throw Error(Errc::io, "sha256 failed");
  return out;
}

std::array<std::uint8_t, 32> corpus_digest(std::span<const fs::path> files) {
  std::vector<std::string> names;
  for (const auto& f : files) names.push_back(f.filename().string());
  std::sort(names.begin(), names.end());
  std::string joined;
  for (const auto& n : names) joined += n + '\n';
  return sha256({reinterpret_cast<const std::uint8_t*>(joined.data()), joined.size()});
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : bytes) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

}  // namespace lpesr
