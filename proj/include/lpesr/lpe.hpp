#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "lpesr/error.hpp"

namespace lpesr {

/// 3x3 neighbourhood; (1,1) is the centre pixel.
using Window = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;

struct Offset {
  int dr = 0;
  int dc = 0;
  bool operator==(const Offset&) const = default;
};

/// Row-major scan of the eight neighbours; entry k carries LBP weight 2^k.
inline constexpr std::array<Offset, 8> kRowMajorNeighbors = {
    {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};

/// Bit layout and quantizers of a local patch code.
///
/// The code is laid out most significant first as [central level | difference level | LBP].
/// Fields with zero width are omitted. Thresholds are lower bin edges in grayscale units;
/// a value belongs to the highest bin whose edge it reaches.
struct LpeConfig {
  int total_bits = 0;
  int n_c = 0;
  int n_d = 0;
  int n_p = 0;
  std::vector<double> t_c;
  std::vector<double> t_d;
  std::array<Offset, 8> neighbor_order = kRowMajorNeighbors;

  std::uint32_t class_count() const { return std::uint32_t(1) << total_bits; }

  bool operator==(const LpeConfig&) const = default;
};

struct LpeCode {
  std::uint32_t value = 0;
  int bits = 0;

  bool operator==(const LpeCode&) const = default;
};

LpeConfig make_config(int total_bits);

/// Throws Errc::parameter when a hand-built config breaks the layout invariants.
void validate(const LpeConfig& cfg);

std::uint32_t lbp(const Window& patch, const LpeConfig& cfg);

inline std::uint32_t quantize_level(double v, const std::vector<double>& thresholds) {
  if (thresholds.size() <= 16) {
    // Short lists: a branch-free count beats a mispredicted binary search.
    std::uint32_t above = 0;
    for (double t : thresholds) above += std::uint32_t(v >= t);
    return above == 0 ? 0u : above - 1;
  }
  const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), v);
  return it == thresholds.begin() ? 0u : std::uint32_t(it - thresholds.begin() - 1);
}

inline std::uint32_t lpe_c(double g_c, const LpeConfig& cfg) { return quantize_level(g_c, cfg.t_c); }
inline std::uint32_t lpe_d(double d, const LpeConfig& cfg) { return quantize_level(d, cfg.t_d); }

double mean_abs_diff(const Window& patch);

/// Code of a window read straight from a row-major raster; `center` points at g_c
/// and `stride` is the row pitch in elements. The hot path of harvesting and upscaling.
template <typename Scalar>
inline std::uint32_t encode_at(const Scalar* center, std::ptrdiff_t stride, const LpeConfig& cfg) {
  std::ptrdiff_t offset[8];
  for (int k = 0; k < 8; ++k) offset[k] = cfg.neighbor_order[k].dr * stride + cfg.neighbor_order[k].dc;
  const double g_c = double(center[0]);
  std::uint32_t bits = 0;
  double diff_sum = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double diff = double(center[offset[k]]) - g_c;
    bits |= std::uint32_t(diff >= 0.0) << k;
    diff_sum += std::fabs(diff);
  }
  std::uint32_t code = cfg.n_p == 8 ? bits : 0u;
  if (cfg.n_d > 0) code |= lpe_d(diff_sum / 8.0, cfg) << cfg.n_p;
  if (cfg.n_c > 0) code |= lpe_c(g_c, cfg) << (cfg.n_d + cfg.n_p);
  return code;
}

/// Codes of `count` consecutive centres starting at `center`; same values as
/// encode_at on each, laid out so the per-neighbour loops vectorise.
void encode_row(const double* center, std::ptrdiff_t stride, std::size_t count, const LpeConfig& cfg,
                std::uint32_t* codes);

LpeCode encode(const Window& patch, const LpeConfig& cfg);

// Field extraction from a packed code.
std::uint32_t lbp_field(std::uint32_t code, const LpeConfig& cfg);
std::uint32_t d_field(std::uint32_t code, const LpeConfig& cfg);
std::uint32_t c_field(std::uint32_t code, const LpeConfig& cfg);

}  // namespace lpesr
