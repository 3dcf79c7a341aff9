#pragma once

#include <filesystem>

#include "lpesr/image.hpp"

namespace lpesr {

// PNG and BMP, 8 bits per channel. Alpha is dropped and palettes are expanded;
// gray PNGs and BMPs with a gray palette come back as one-channel rasters.
Raster read_image(const std::filesystem::path& path);

// Format picked from the extension (.png or .bmp).
void write_image(const std::filesystem::path& path, const Raster& img);

bool has_image_extension(const std::filesystem::path& path);

}  // namespace lpesr
