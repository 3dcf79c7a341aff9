#include "lpesr/image.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace lpesr {

namespace {

// BT.601 studio swing, RGB in [0,255].
const Eigen::Matrix3d& forward_matrix() {
  static const Eigen::Matrix3d m = [] {
    Eigen::Matrix3d f;
    f << 65.481, 128.553, 24.966,
        -37.797, -74.203, 112.0,
        112.0, -93.786, -18.214;
    return Eigen::Matrix3d(f / 255.0);
  }();
  return m;
}

const Eigen::Vector3d kYccOffset(16.0, 128.0, 128.0);

const Eigen::Matrix3d& inverse_matrix() {
  static const Eigen::Matrix3d m = forward_matrix().inverse();
  return m;
}

void check_ycc_dims(const YccImage& img) {
  require_nonempty(img.y, "ycc_to_rgb");
  if (img.cb.rows() != img.y.rows() || img.cb.cols() != img.y.cols() || img.cr.rows() != img.y.rows() ||
      img.cr.cols() != img.y.cols())
    throw Error(Errc::dimension, "ycc_to_rgb: planes differ in size");
}

std::uint8_t to_u8(double v) { return std::uint8_t(round_half_away(std::clamp(v, 0.0, 255.0))); }

}  // namespace

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::parameter: return "parameter";
    case Errc::dimension: return "dimension";
    case Errc::io: return "io";
    case Errc::no_images: return "no_images";
    case Errc::scale_mismatch: return "scale_mismatch";
    case Errc::format_magic: return "format_magic";
    case Errc::format_version: return "format_version";
    case Errc::format_truncated: return "format_truncated";
    case Errc::format_dims: return "format_dims";
  }
  return "unknown";
}

double cubic_kernel(double x, double a) {
  const double ax = std::abs(x);
  const double ax2 = ax * ax;
  const double ax3 = ax2 * ax;
  if (ax <= 1.0) return (a + 2.0) * ax3 - (a + 3.0) * ax2 + 1.0;
  if (ax < 2.0) return a * ax3 - 5.0 * a * ax2 + 8.0 * a * ax - 4.0 * a;
  return 0.0;
}

int scaled_size(int size, Scale scale) {
  return int(std::lround(double(size) * scale.num / scale.den));
}

AxisWeights axis_weights(int in_size, const ResampleSpec& spec) {
  if (spec.scale.num <= 0 || spec.scale.den <= 0) throw Error(Errc::parameter, "resample: scale must be positive");
  if (in_size < 1) throw Error(Errc::dimension, "resample: empty axis");

  AxisWeights w;
  w.in_size = in_size;
  w.out_size = std::max(1, scaled_size(in_size, spec.scale));

  const double scale = spec.scale.value();
  const bool widen = spec.antialias && scale < 1.0;
  const double kscale = widen ? scale : 1.0;
  const double support = 2.0 / kscale;
  w.taps = int(std::ceil(2.0 * support)) + 2;
  w.index.resize(std::size_t(w.out_size) * w.taps);
  w.weight.resize(std::size_t(w.out_size) * w.taps);

  for (int i = 0; i < w.out_size; ++i) {
    // Pixel-centre alignment between the two grids.
    const double u = (i + 0.5) * spec.scale.den / spec.scale.num - 0.5;
    const int first = int(std::floor(u - support)) + 1;
    int* idx = &w.index[std::size_t(i) * w.taps];
    double* wt = &w.weight[std::size_t(i) * w.taps];
    double sum = 0.0;
    for (int t = 0; t < w.taps; ++t) {
      const int j = first + t;
      wt[t] = kscale * cubic_kernel(kscale * (u - j), spec.a);
      idx[t] = std::clamp(j, 0, in_size - 1);
      sum += wt[t];
    }
    for (int t = 0; t < w.taps; ++t) wt[t] /= sum;
  }
  return w;
}

YccImage rgb_to_ycc(const Raster& rgb) {
  if (rgb.width < 1 || rgb.height < 1) throw Error(Errc::dimension, "rgb_to_ycc: empty raster");
  if (rgb.channels != 3) throw Error(Errc::parameter, "rgb_to_ycc: expected three channels");

  YccImage out{Plane(rgb.height, rgb.width), Plane(rgb.height, rgb.width), Plane(rgb.height, rgb.width)};
  const Eigen::Matrix3d& m = forward_matrix();
  for (int r = 0; r < rgb.height; ++r) {
    for (int c = 0; c < rgb.width; ++c) {
      const Eigen::Vector3d v(rgb.at(r, c, 0), rgb.at(r, c, 1), rgb.at(r, c, 2));
      const Eigen::Vector3d ycc = m * v + kYccOffset;
      out.y(r, c) = ycc[0];
      out.cb(r, c) = ycc[1];
      out.cr(r, c) = ycc[2];
    }
  }
  return out;
}

Raster ycc_to_rgb(const YccImage& img) {
  check_ycc_dims(img);
  Raster out(int(img.y.cols()), int(img.y.rows()), 3);
  const Eigen::Matrix3d& inv = inverse_matrix();
  for (int r = 0; r < out.height; ++r) {
    for (int c = 0; c < out.width; ++c) {
      const Eigen::Vector3d ycc(img.y(r, c), img.cb(r, c), img.cr(r, c));
      const Eigen::Vector3d rgb = inv * (ycc - kYccOffset);
      for (int ch = 0; ch < 3; ++ch) out.at(r, c, ch) = to_u8(rgb[ch]);
    }
  }
  return out;
}

Plane resample(const Plane& p, const ResampleSpec& spec) {
  require_nonempty(p, "resample");
  const AxisWeights wx = axis_weights(int(p.cols()), spec);
  const AxisWeights wy = axis_weights(int(p.rows()), spec);

  Plane horiz(p.rows(), wx.out_size);
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    const double* src = p.row(r).data();
    for (int i = 0; i < wx.out_size; ++i) {
      const int* idx = &wx.index[std::size_t(i) * wx.taps];
      const double* wt = &wx.weight[std::size_t(i) * wx.taps];
      // Weights sum to one, so summing offsets from one tap keeps constants exact.
      const double base = src[idx[0]];
      double acc = 0.0;
      for (int t = 0; t < wx.taps; ++t) acc += wt[t] * (src[idx[t]] - base);
      horiz(r, i) = base + acc;
    }
  }

  Plane out(wy.out_size, wx.out_size);
  for (int i = 0; i < wy.out_size; ++i) {
    const int* idx = &wy.index[std::size_t(i) * wy.taps];
    const double* wt = &wy.weight[std::size_t(i) * wy.taps];
    auto row = out.row(i);
    const auto base = horiz.row(idx[0]);
    row.setZero();
    for (int t = 0; t < wy.taps; ++t) row += wt[t] * (horiz.row(idx[t]) - base);
    row += base;
  }
  return out;
}

Plane modcrop(const Plane& p, int s) {
  if (s < 1) throw Error(Errc::parameter, "modcrop: s must be >= 1");
  const Eigen::Index h = p.rows() - p.rows() % s;
  const Eigen::Index w = p.cols() - p.cols() % s;
  if (h == 0 || w == 0) throw Error(Errc::dimension, "modcrop: plane smaller than the scale factor");
  return p.topLeftCorner(h, w);
}

Plane pad_replicate(const Plane& p, int margin) {
  if (margin < 0) throw Error(Errc::parameter, "pad_replicate: negative margin");
  require_nonempty(p, "pad_replicate");
  const Eigen::Index h = p.rows();
  const Eigen::Index w = p.cols();
  Plane out(h + 2 * margin, w + 2 * margin);
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const Eigen::Index sr = std::clamp<Eigen::Index>(r - margin, 0, h - 1);
    for (Eigen::Index c = 0; c < out.cols(); ++c)
      out(r, c) = p(sr, std::clamp<Eigen::Index>(c - margin, 0, w - 1));
  }
  return out;
}

double round_half_away(double v) { return std::round(v); }

Plane8 quantize_8bit(const Plane& p) { return p.unaryExpr([](double v) { return to_u8(v); }); }

Plane quantize_levels(const Plane& p) { return to_plane(quantize_8bit(p)); }

Plane gray_to_plane(const Raster& gray) {
  if (gray.channels != 1) throw Error(Errc::parameter, "gray_to_plane: expected one channel");
  if (gray.width < 1 || gray.height < 1) throw Error(Errc::dimension, "gray_to_plane: empty raster");
  Plane out(gray.height, gray.width);
  for (int r = 0; r < gray.height; ++r)
    for (int c = 0; c < gray.width; ++c) out(r, c) = gray.at(r, c, 0);
  return out;
}

Raster plane_to_gray(const Plane& p) {
  require_nonempty(p, "plane_to_gray");
  const Plane8 q = quantize_8bit(p);
  Raster out(int(p.cols()), int(p.rows()), 1);
  std::copy(q.data(), q.data() + q.size(), out.pixels.begin());
  return out;
}

Plane luma_levels(const Raster& r) {
  if (r.channels == 1) return gray_to_plane(r);
  return quantize_levels(rgb_to_ycc(r).y);
}

Plane degrade(const Plane& hr, int s) {
  if (s < 1) throw Error(Errc::parameter, "degrade: s must be >= 1");
  return quantize_levels(resample(modcrop(hr, s), {Scale::down(s), -0.5, true}));
}

}  // namespace lpesr
