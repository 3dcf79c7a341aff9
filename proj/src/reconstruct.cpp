#include "lpesr/reconstruct.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "lpesr/parallel.hpp"

namespace lpesr {

namespace {

using Vector9f = Eigen::Matrix<float, 9, 1>;

void check_inputs(const Plane& lr, const ProjectionModel& model, const ReconSpec& spec) {
  if (spec.scale != 0 && spec.scale != model.scale())
    throw Error(Errc::scale_mismatch, "model scale " + std::to_string(model.scale()) + " does not match requested scale " +
                                          std::to_string(spec.scale));
  if (lr.rows() < 3 || lr.cols() < 3) throw Error(Errc::dimension, "upscale: input must be at least 3x3");
  if (spec.stride_lr < 1 || spec.stride_hr < 1) throw Error(Errc::parameter, "upscale: strides must be >= 1");
}

Plane upscale_projection(const Plane& lr, const ProjectionModel& model, const ReconSpec& spec) {
  const int s = model.scale();
  const int block = 3 * s;
  const int rows = model.rows();
  const Eigen::Index hr_h = lr.rows() * s;
  const Eigen::Index hr_w = lr.cols() * s;
  const LpeConfig& cfg = model.config();

  Plane out = resample(lr, {Scale::up(s), -0.5, true});
  const Plane padded = pad_replicate(lr, 1);
  const std::vector<int> grid_r = recon_grid(int(lr.rows()), spec.stride_lr);
  const std::vector<int> grid_c = recon_grid(int(lr.cols()), spec.stride_lr);

  Plane acc = Plane::Zero(hr_h, hr_w);
  Plane weight = Plane::Zero(hr_h, hr_w);

  // Each worker owns a band of HR rows and replays, in grid order, every centre whose
  // block reaches into it. Per-pixel summation order is therefore independent of banding.
  const int threads = spec.threads > 0 ? spec.threads : thread_count();
  parallel_for(
      std::size_t(threads),
      [&](std::size_t b0, std::size_t b1) {
        for (std::size_t band = b0; band < b1; ++band) {
          const Eigen::Index r0 = hr_h * Eigen::Index(band) / threads;
          const Eigen::Index r1 = hr_h * Eigen::Index(band + 1) / threads;
          if (r0 >= r1) continue;
          Eigen::VectorXf residual(rows);
          for (int i : grid_r) {
            const Eigen::Index top = Eigen::Index(s) * (i - 1);
            const Eigen::Index lo = std::max(top, r0);
            const Eigen::Index hi = std::min(top + block, r1);
            if (lo >= hi) continue;
            for (int j : grid_c) {
              const double* center = &padded(i + 1, j + 1);
              const float* p = model.data(encode_at(center, padded.cols(), cfg));
              const Eigen::Index left = Eigen::Index(s) * (j - 1);
              const Eigen::Index c_lo = std::max<Eigen::Index>(left, 0);
              const Eigen::Index c_hi = std::min<Eigen::Index>(left + block, hr_w);
              if (p) {
                Window w;
                for (int dr = 0; dr < 3; ++dr)
                  for (int dc = 0; dc < 3; ++dc) w(dr, dc) = center[(dr - 1) * padded.cols() + (dc - 1)];
                const Vector9f y = centered(w).cast<float>();
                residual.noalias() = ProjectionModel::MatrixRef(p, rows, 9) * y;
                for (Eigen::Index r = lo; r < hi; ++r) {
                  const float* src = residual.data() + (r - top) * block;
                  double* dst = &acc(r, 0);
                  for (Eigen::Index c = c_lo; c < c_hi; ++c) dst[c] += src[c - left];
                }
              }
              for (Eigen::Index r = lo; r < hi; ++r) weight.row(r).segment(c_lo, c_hi - c_lo).array() += 1.0;
            }
          }
        }
      },
      threads);

  for (Eigen::Index r = 0; r < hr_h; ++r)
    for (Eigen::Index c = 0; c < hr_w; ++c)
      if (weight(r, c) > 0.0) out(r, c) += acc(r, c) / weight(r, c);
  return out;
}

Plane upscale_filter(const Plane& lr, const ProjectionModel& model, const ReconSpec& spec) {
  const int s = model.scale();
  const LpeConfig& cfg = model.config();
  const Plane bicubic = resample(lr, {Scale::up(s), -0.5, true});
  const Plane padded = pad_replicate(bicubic, 1);
  const Eigen::Index stride = padded.cols();
  Plane out = bicubic;

  parallel_for(
      std::size_t(bicubic.rows()),
      [&](std::size_t b, std::size_t e) {
        const std::size_t width = std::size_t(bicubic.cols());
        std::vector<std::uint32_t> codes(width);
        std::vector<double> means(width);
        for (std::size_t r = b; r < e; ++r) {
          if (r % std::size_t(spec.stride_hr) != 0) continue;
          const double* row = &padded(Eigen::Index(r) + 1, 1);
          const double* top = row - stride - 1;
          const double* mid = row - 1;
          const double* bot = row + stride - 1;
          encode_row(row, stride, width, cfg, codes.data());
          for (std::size_t c = 0; c < width; ++c)
            means[c] = (top[c] + top[c + 1] + top[c + 2] + mid[c] + mid[c + 1] + mid[c + 2] + bot[c] + bot[c + 1] +
                        bot[c + 2]) / 9.0;
          for (std::size_t c = 0; c < width; c += std::size_t(spec.stride_hr)) {
            const float* f = model.data(codes[c]);
            if (!f) continue;
            const double m = means[c];
            const double v = f[0] * (top[c] - m) + f[1] * (top[c + 1] - m) + f[2] * (top[c + 2] - m) +
                             f[3] * (mid[c] - m) + f[4] * (mid[c + 1] - m) + f[5] * (mid[c + 2] - m) +
                             f[6] * (bot[c] - m) + f[7] * (bot[c + 1] - m) + f[8] * (bot[c + 2] - m);
            out(Eigen::Index(r), Eigen::Index(c)) += v;
          }
        }
      },
      spec.threads);
  return out;
}

}  // namespace

std::vector<int> recon_grid(int size, int stride) {
  if (stride < 1) throw Error(Errc::parameter, "stride must be >= 1");
  std::vector<int> g;
  for (int i = 0; i < size; i += stride) g.push_back(i);
  if (!g.empty() && g.back() != size - 1) g.push_back(size - 1);
  return g;
}

Plane upscale(const Plane& lr, const ProjectionModel& model, const ReconSpec& spec) {
  check_inputs(lr, model, spec);
  Plane out = model.kind() == ProjectorKind::p3 ? upscale_filter(lr, model, spec) : upscale_projection(lr, model, spec);
  if (spec.clamp) out = out.cwiseMax(0.0).cwiseMin(255.0);
  return out;
}

Raster upscale_color(const Raster& img, const ProjectionModel& model, const ReconSpec& spec) {
  if (img.channels == 1) return plane_to_gray(upscale(gray_to_plane(img), model, spec));
  const YccImage ycc = rgb_to_ycc(img);
  const ResampleSpec up{Scale::up(model.scale()), -0.5, true};
  YccImage hr{upscale(ycc.y, model, spec), resample(ycc.cb, up), resample(ycc.cr, up)};
  return ycc_to_rgb(hr);
}

}  // namespace lpesr
