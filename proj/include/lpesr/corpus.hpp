#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace lpesr {

/// Image files of a corpus. A directory yields its .png/.bmp entries sorted by name;
/// any other file is read as a manifest with one path per line (relative paths resolve
/// against the manifest's directory) and keeps the manifest order.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir_or_manifest);

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> bytes);

/// SHA-256 of the sorted file names, newline separated.
std::array<std::uint8_t, 32> corpus_digest(std::span<const std::filesystem::path> files);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace lpesr
