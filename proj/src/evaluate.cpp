#include "lpesr/evaluate.hpp"

#include "lpesr/image_io.hpp"

namespace lpesr {

namespace {

template <typename Upscaler>
QualityReport run(std::span<const EvalImage> images, const EvalOptions& opt, std::string method, Upscaler&& up) {
  QualityReport report;
  report.method = std::move(method);
  report.scale = opt.scale;
  report.shave = opt.shave < 0 ? opt.scale : opt.shave;
  report.quantized = opt.quantize;
  for (const auto& img : images) {
    const Plane sr = up(img.lr).cwiseMax(0.0).cwiseMin(255.0);
    report.add({img.name, psnr(img.hr, sr, report.shave, opt.quantize), ssim(img.hr, sr, report.shave, opt.quantize)});
  }
  report.finalize();
  return report;
}

}  // namespace

EvalImage make_eval_image(std::string name, const Plane& luma, int scale) {
  EvalImage e;
  e.name = std::move(name);
  e.hr = modcrop(luma, scale);
  e.lr = degrade(e.hr, scale);
  return e;
}

std::vector<EvalImage> load_eval_set(std::span<const std::filesystem::path> files, int scale) {
  std::vector<EvalImage> out;
  for (const auto& f : files) out.push_back(make_eval_image(f.stem().string(), luma_levels(read_image(f)), scale));
  return out;
}

QualityReport evaluate_bicubic(std::span<const EvalImage> images, const EvalOptions& opt) {
  const ResampleSpec up{Scale::up(opt.scale), -0.5, true};
  return run(images, opt, "Bicubic", [&](const Plane& lr) { return resample(lr, up); });
}

QualityReport evaluate_model(std::span<const EvalImage> images, const ProjectionModel& model, const EvalOptions& opt) {
  if (model.scale() != opt.scale)
    throw Error(Errc::scale_mismatch, "model scale " + std::to_string(model.scale()) + " does not match evaluation scale " +
                                          std::to_string(opt.scale));
  ReconSpec spec = opt.recon;
  spec.scale = opt.scale;
  return run(images, opt, model_label(model), [&](const Plane& lr) { return upscale(lr, model, spec); });
}

std::string model_label(const ProjectionModel& model) {
  std::string k = to_string(model.kind());
  k[0] = 'P';
  return "LPE" + std::to_string(model.config().total_bits) + "bits_" + k;
}

}  // namespace lpesr
