#pragma once

#include <stdexcept>
#include <string>

namespace lpesr {

enum class Errc {
  parameter,
  dimension,
  io,
  no_images,
  scale_mismatch,
  format_magic,
  format_version,
  format_truncated,
  format_dims,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

const char* to_string(Errc code) noexcept;

}  // namespace lpesr
