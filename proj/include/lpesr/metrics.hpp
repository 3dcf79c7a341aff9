#pragma once

#include <string>
#include <vector>

#include "lpesr/image.hpp"

namespace lpesr {

/// PSNR in dB over the plane minus a `shave`-pixel border, both planes quantized to
/// 8 bits first unless `quantize` is off. +infinity when the planes are identical.
double psnr(const Plane& a, const Plane& b, int shave, bool quantize = true);

/// Mean SSIM (11x11 Gaussian window, sigma 1.5, K1 = 0.01, K2 = 0.03, L = 255) over the
/// shaved planes. The SSIM map is taken only where the window fits.
double ssim(const Plane& a, const Plane& b, int shave, bool quantize = true);

struct ImageQuality {
  std::string name;
  double psnr = 0.0;
  double ssim = 0.0;
};

struct QualityReport {
  std::string method;
  std::vector<ImageQuality> per_image;
  double mean_psnr = 0.0;
  double mean_ssim = 0.0;
  int shave = 0;
  int scale = 0;
  bool quantized = true;
  std::string color_space = "BT.601 studio-swing Y";

  void add(ImageQuality q);
  void finalize();
};

std::string to_csv(const QualityReport& r);
std::string to_table(const std::vector<QualityReport>& reports);
std::string to_json(const std::vector<QualityReport>& reports);

}  // namespace lpesr
