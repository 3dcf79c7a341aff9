#pragma once

#include "lpesr/image.hpp"
#include "lpesr/projectors.hpp"

namespace lpesr {

struct ReconSpec {
  int scale = 0;      // expected model scale; 0 accepts whatever the model holds
  int stride_lr = 1;  // projection models
  int stride_hr = 1;  // filter models
  bool clamp = false;
  int threads = 0;    // 0: thread_count()
};

/// LR centres visited along one axis: 0, stride, 2 stride, ... plus the last index,
/// so every HR pixel is covered for strides up to 3.
std::vector<int> recon_grid(int size, int stride);

/// Bicubic upscale plus the learned per-class residual.
///
/// Projection models: every LR centre on the stride grid (replicate-padded 3x3 window) is
/// encoded, its mean-removed window is mapped through the class matrix, and the
/// (3s)x(3s) residual block is accumulated over the HR image. Overlaps are averaged;
/// blocks are clipped at the image border.
/// Filter models: every pixel of the bicubic image gets the class filter applied to its
/// mean-removed 3x3 window.
Plane upscale(const Plane& lr, const ProjectionModel& model, const ReconSpec& spec = {});

/// Y through upscale, Cb/Cr through bicubic. Gray rasters stay gray.
Raster upscale_color(const Raster& img, const ProjectionModel& model, const ReconSpec& spec = {});

}  // namespace lpesr
