#include "lpesr/image_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include <png.h>

namespace lpesr {

namespace fs = std::filesystem;

namespace {

std::string lower_ext(const fs::path& p) {
  std::string e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return e;
}

Raster collapse_gray(Raster img) {
  if (img.channels != 3) return img;
  const std::size_t n = std::size_t(img.width) * img.height;
  for (std::size_t i = 0; i < n; ++i) {
    const auto* px = &img.pixels[i * 3];
    if (px[0] != px[1] || px[0] != px[2]) return img;
  }
  Raster gray(img.width, img.height, 1);
  for (std::size_t i = 0; i < n; ++i) gray.pixels[i] = img.pixels[i * 3];
  return gray;
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw Error(Errc::io, "cannot open " + path.string());
  return f;
}

[[noreturn]] void png_fail(const fs::path& path, const char* msg) {
  throw Error(Errc::io, "png " + path.string() + ": " + msg);
}

// Ancillary-chunk complaints (sRGB profiles and the like) are not errors.
void png_quiet(png_structp, png_const_charp) {}

Raster read_png(const fs::path& path) {
  FilePtr f = open_file(path, "rb");
  std::array<unsigned char, 8> sig{};
  if (std::fread(sig.data(), 1, sig.size(), f.get()) != sig.size() || png_sig_cmp(sig.data(), 0, sig.size()))
    png_fail(path, "bad signature");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_quiet);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    png_fail(path, "out of memory");
  }
  Raster img;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    png_fail(path, "decode error");
  }
  png_init_io(png, f.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  img = Raster(int(png_get_image_width(png, info)), int(png_get_image_height(png, info)), channels);
  rows.resize(img.height);
  for (int r = 0; r < img.height; ++r) rows[r] = &img.pixels[std::size_t(r) * img.width * channels];
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (channels != 1 && channels != 3) png_fail(path, "unsupported channel layout");
  return img;
}

void write_png(const fs::path& path, const Raster& img) {
  FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    png_fail(path, "out of memory");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    png_fail(path, "encode error");
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, png_uint_32(img.width), png_uint_32(img.height), 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < img.height; ++r)
    png_write_row(png, &img.pixels[std::size_t(r) * img.width * img.channels]);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

std::uint32_t le32(const unsigned char* p) { return p[0] | (p[1] << 8) | (p[2] << 16) | (std::uint32_t(p[3]) << 24); }
std::uint16_t le16(const unsigned char* p) { return std::uint16_t(p[0] | (p[1] << 8)); }

void put32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}
void put16(std::vector<unsigned char>& b, std::uint16_t v) {
  b.push_back(v & 0xff);
  b.push_back(v >> 8);
}

// Uncompressed 8-bit paletted, 24-bit and 32-bit BMPs.
Raster read_bmp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  const std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto fail = [&](const char* msg) -> Error { return Error(Errc::io, "bmp " + path.string() + ": " + msg); };
  if (buf.size() < 54 || buf[0] != 'B' || buf[1] != 'M') throw fail("bad header");

  const std::uint32_t offset = le32(&buf[10]);
  const std::uint32_t header_size = le32(&buf[14]);
  const auto width = std::int32_t(le32(&buf[18]));
  const auto raw_height = std::int32_t(le32(&buf[22]));
  const std::uint16_t bpp = le16(&buf[28]);
  const std::uint32_t compression = le32(&buf[30]);
  std::uint32_t palette_size = le32(&buf[46]);
  if (width <= 0 || raw_height == 0) throw fail("bad dimensions");
  if (compression != 0) throw fail("compressed bitmaps are not supported");
  if (bpp != 8 && bpp != 24 && bpp != 32) throw fail("unsupported bit depth");

  const bool bottom_up = raw_height > 0;
  const int height = bottom_up ? raw_height : -raw_height;
  const std::size_t stride = (std::size_t(width) * bpp / 8 + 3) & ~std::size_t(3);
  if (offset + stride * height > buf.size()) throw fail("truncated pixel data");

  std::vector<std::array<unsigned char, 3>> palette;
  if (bpp == 8) {
    if (palette_size == 0) palette_size = 256;
    const std::size_t pal_start = 14 + header_size;
    if (pal_start + 4 * palette_size > buf.size()) throw fail("truncated palette");
    for (std::uint32_t i = 0; i < palette_size; ++i) {
      const unsigned char* e = &buf[pal_start + 4 * i];
      palette.push_back({e[2], e[1], e[0]});
    }
  }

  Raster img(width, height, 3);
  for (int r = 0; r < height; ++r) {
    const unsigned char* src = &buf[offset + stride * (bottom_up ? height - 1 - r : r)];
    for (int c = 0; c < width; ++c) {
      if (bpp == 8) {
        if (src[c] >= palette.size()) throw fail("palette index out of range");
        const auto& e = palette[src[c]];
        for (int ch = 0; ch < 3; ++ch) img.at(r, c, ch) = e[ch];
      } else {
        const unsigned char* px = src + std::size_t(c) * (bpp / 8);
        img.at(r, c, 0) = px[2];
        img.at(r, c, 1) = px[1];
        img.at(r, c, 2) = px[0];
      }
    }
  }
  return bpp == 8 ? collapse_gray(std::move(img)) : img;
}

void write_bmp(const fs::path& path, const Raster& img) {
  const bool gray = img.channels == 1;
  const int bpp = gray ? 8 : 24;
  const std::size_t stride = (std::size_t(img.width) * bpp / 8 + 3) & ~std::size_t(3);
  const std::uint32_t palette_bytes = gray ? 256 * 4 : 0;
  const std::uint32_t offset = 54 + palette_bytes;
  const auto image_bytes = std::uint32_t(stride * img.height);

  std::vector<unsigned char> b;
  b.reserve(offset + image_bytes);
  b.push_back('B');
  b.push_back('M');
  put32(b, offset + image_bytes);
  put32(b, 0);
  put32(b, offset);
  put32(b, 40);
  put32(b, std::uint32_t(img.width));
  put32(b, std::uint32_t(img.height));
  put16(b, 1);
  put16(b, std::uint16_t(bpp));
  put32(b, 0);
  put32(b, image_bytes);
  put32(b, 2835);
  put32(b, 2835);
  put32(b, gray ? 256 : 0);
  put32(b, 0);
  if (gray) {
    for (int i = 0; i < 256; ++i) {
      for (int k = 0; k < 3; ++k) b.push_back(std::uint8_t(i));
      b.push_back(0);
    }
  }
  for (int r = img.height - 1; r >= 0; --r) {
    const std::size_t start = b.size();
    for (int c = 0; c < img.width; ++c) {
      if (gray) {
        b.push_back(img.at(r, c, 0));
      } else {
        b.push_back(img.at(r, c, 2));
        b.push_back(img.at(r, c, 1));
        b.push_back(img.at(r, c, 0));
      }
    }
    b.resize(start + stride, 0);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(b.data()), std::streamsize(b.size()));
  if (!out) throw Error(Errc::io, "write failed: " + path.string());
}

}  // namespace

bool has_image_extension(const fs::path& path) {
  const std::string e = lower_ext(path);
  return e == ".png" || e == ".bmp";
}

Raster read_image(const fs::path& path) {
  const std::string e = lower_ext(path);
  if (e == ".png") return read_png(path);
  if (e == ".bmp") return read_bmp(path);
  throw Error(Errc::io, "unsupported image format: " + path.string());
}

void write_image(const fs::path& path, const Raster& img) {
  if (img.width < 1 || img.height < 1 || (img.channels != 1 && img.channels != 3))
    throw Error(Errc::dimension, "write_image: invalid raster");
  const std::string e = lower_ext(path);
  if (e == ".png") return write_png(path, img);
  if (e == ".bmp") return write_bmp(path, img);
  throw Error(Errc::io, "unsupported image format: " + path.string());
}

}  // namespace lpesr
