#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lpesr/metrics.hpp"
#include "lpesr/reconstruct.hpp"

namespace lpesr {

struct EvalImage {
  std::string name;
  Plane hr;  // modcropped luma, 8-bit levels
  Plane lr;  // degrade(hr)
};

struct EvalOptions {
  int scale = 3;
  int shave = -1;  // negative: shave = scale
  bool quantize = true;
  ReconSpec recon;
};

std::vector<EvalImage> load_eval_set(std::span<const std::filesystem::path> files, int scale);
EvalImage make_eval_image(std::string name, const Plane& luma, int scale);

QualityReport evaluate_bicubic(std::span<const EvalImage> images, const EvalOptions& opt);
QualityReport evaluate_model(std::span<const EvalImage> images, const ProjectionModel& model, const EvalOptions& opt);

/// Display name of a model, e.g. "LPE12bits_P1".
std::string model_label(const ProjectionModel& model);

}  // namespace lpesr
