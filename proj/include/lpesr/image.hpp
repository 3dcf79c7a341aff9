#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "lpesr/error.hpp"

namespace lpesr {

// Rows are image rows (height), columns are image columns (width).
template <typename Scalar>
using PlaneT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Plane = PlaneT<double>;
using Plane8 = PlaneT<std::uint8_t>;

struct YccImage {
  Plane y;
  Plane cb;
  Plane cr;
};

/// Interleaved 8-bit raster with one (gray) or three (RGB) channels.
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;

  Raster() = default;
  Raster(int w, int h, int c) : width(w), height(h), channels(c), pixels(std::size_t(w) * h * c, 0) {}

  std::uint8_t& at(int row, int col, int ch) { return pixels[(std::size_t(row) * width + col) * channels + ch]; }
  std::uint8_t at(int row, int col, int ch) const { return pixels[(std::size_t(row) * width + col) * channels + ch]; }

  bool operator==(const Raster&) const = default;
};

/// Rational scale factor num/den.
struct Scale {
  int num = 1;
  int den = 1;

  double value() const { return double(num) / double(den); }
  Scale inverse() const { return {den, num}; }
  static Scale up(int s) { return {s, 1}; }
  static Scale down(int s) { return {1, s}; }
};

struct ResampleSpec {
  Scale scale;
  double a = -0.5;
  bool antialias = true;
};

/// Taps of a 1-D resampling pass. Output sample i reads input indices
/// first[i] .. first[i] + taps - 1 (already clamped into range through `index`).
struct AxisWeights {
  int in_size = 0;
  int out_size = 0;
  int taps = 0;
  std::vector<int> index;      // out_size * taps, clamped source indices
  std::vector<double> weight;  // out_size * taps, each row sums to one
};

double cubic_kernel(double x, double a = -0.5);

int scaled_size(int size, Scale scale);

AxisWeights axis_weights(int in_size, const ResampleSpec& spec);

YccImage rgb_to_ycc(const Raster& rgb);
Raster ycc_to_rgb(const YccImage& img);

Plane resample(const Plane& p, const ResampleSpec& spec);

Plane modcrop(const Plane& p, int s);
Plane pad_replicate(const Plane& p, int margin);

double round_half_away(double v);
Plane8 quantize_8bit(const Plane& p);
/// quantize_8bit, kept in double precision.
Plane quantize_levels(const Plane& p);

template <typename Scalar>
Plane to_plane(const PlaneT<Scalar>& p) {
  return p.template cast<double>();
}

/// Gray raster to plane; three-channel rasters are rejected.
Plane gray_to_plane(const Raster& gray);
Raster plane_to_gray(const Plane& p);

/// Luma of a raster (Y of BT.601 for RGB, the raw value for gray), rounded to 8-bit levels.
Plane luma_levels(const Raster& r);

/// The synthetic degradation used for training and evaluation:
/// modcrop to a multiple of s, antialiased bicubic downscale by s, rounded to 8-bit levels.
Plane degrade(const Plane& hr, int s);

inline void require_nonempty(const Plane& p, const char* what) {
  if (p.rows() < 1 || p.cols() < 1) throw Error(Errc::dimension, std::string(what) + ": empty plane");
}

}  // namespace lpesr
