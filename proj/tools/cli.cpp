#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lpesr/corpus.hpp"
#include "lpesr/evaluate.hpp"
#include "lpesr/image_io.hpp"
#include "lpesr/lpe.hpp"
#include "lpesr/projectors.hpp"
#include "lpesr/reconstruct.hpp"

namespace lpesr::cli {

namespace fs = std::filesystem;

namespace {

int exit_code(Errc code) {
  switch (code) {
    case Errc::io:
    case Errc::no_images:
    case Errc::dimension: return kInputError;
    case Errc::parameter:
    case Errc::scale_mismatch: return kConfigError;
    case Errc::format_magic:
    case Errc::format_version:
    case Errc::format_truncated:
    case Errc::format_dims: return kFormatError;
  }
  return kInputError;
}

std::vector<fs::path> require_images(const fs::path& where) {
  auto files = list_images(where);
  if (files.empty()) throw Error(Errc::no_images, "no images found in " + where.string());
  return files;
}

struct DegradeArgs {
  std::string input, output;
  int scale = 3;
};

int cmd_degrade(const DegradeArgs& a, std::ostream& out, std::ostream& err) {
  const auto files = require_images(a.input);
  fs::create_directories(a.output);
  int failures = 0;
  for (const auto& f : files) {
    try {
      const Raster img = read_image(f);
      Raster hr, lr;
      if (img.channels == 1) {
        const Plane p = modcrop(gray_to_plane(img), a.scale);
        hr = plane_to_gray(p);
        lr = plane_to_gray(degrade(p, a.scale));
      } else {
        const int h = img.height - img.height % a.scale;
        const int w = img.width - img.width % a.scale;
        if (h == 0 || w == 0) throw Error(Errc::dimension, "image smaller than the scale factor");
        hr = Raster(w, h, 3);
        lr = Raster(w / a.scale, h / a.scale, 3);
        for (int ch = 0; ch < 3; ++ch) {
          Plane p(h, w);
          for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) p(r, c) = hr.at(r, c, ch) = img.at(r, c, ch);
          const Plane8 q = quantize_8bit(degrade(p, a.scale));
          for (int r = 0; r < lr.height; ++r)
            for (int c = 0; c < lr.width; ++c) lr.at(r, c, ch) = q(r, c);
        }
      }
      const std::string stem = f.stem().string();
      write_image(fs::path(a.output) / (stem + "_HR.png"), hr);
      write_image(fs::path(a.output) / (stem + "_LRx" + std::to_string(a.scale) + ".png"), lr);
      out << stem << ": " << hr.width << "x" << hr.height << " -> " << lr.width << "x" << lr.height << "\n";
    } catch (const Error& e) {
      err << f.string() << ": " << e.what() << "\n";
      ++failures;
    }
  }
  return failures ? kInputError : kOk;
}

struct TrainArgs {
  std::string train_dir, out_file, projector = "p1";
  int scale = 3, bits = 12, stride = 1;
  std::size_t n_o = 2048;
  double lambda = 0.01;
  std::uint64_t seed = 0;
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  TrainOptions opt;
  opt.scale = a.scale;
  opt.cfg = make_config(a.bits);
  opt.kind = parse_projector(a.projector);
  opt.n_o = a.n_o;
  opt.lambda = a.lambda;
  opt.seed = a.seed;
  opt.stride_lr = opt.stride_hr = a.stride;

  const auto files = require_images(a.train_dir);
  TrainStats stats;
  const auto t0 = std::chrono::steady_clock::now();
  const ProjectionModel model = train_model(files, opt, &stats);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  save_model(a.out_file, model);

  auto sizes = stats.bucket_sizes;
  std::sort(sizes.begin(), sizes.end());
  const std::size_t present = model.present_count();
  out << "trained " << model_label(model) << " x" << a.scale << " on " << stats.images << " images ("
      << stats.skipped_images << " skipped) in " << std::fixed << std::setprecision(2) << secs << " s\n";
  out << "sites " << stats.sites << ", selected " << stats.selected << "\n";
  out << "classes present " << present << " / " << model.class_count();
  if (!sizes.empty()) out << ", bucket size min " << sizes.front() << " median " << sizes[sizes.size() / 2];
  out << "\n";
  if (stats.skipped_images) err << "warning: " << stats.skipped_images << " images too small for x" << a.scale << "\n";
  if (present * 2 < model.class_count())
    err << "warning: " << (model.class_count() - present) << " of " << model.class_count()
        << " classes have no training samples; a larger corpus is recommended at " << a.bits << " bits\n";
  out << "wrote " << a.out_file << "\n";
  return kOk;
}

struct UpscaleArgs {
  std::string model, input, output;
  int stride = 1;
  int scale = 0;
};

int cmd_upscale(const UpscaleArgs& a, std::ostream& out, std::ostream&) {
  const ProjectionModel model = load_model(a.model);
  if (a.scale != 0 && a.scale != model.scale())
    throw Error(Errc::scale_mismatch, "--scale " + std::to_string(a.scale) + " but the model was trained for x" +
                                          std::to_string(model.scale()));
  const Raster img = read_image(a.input);
  ReconSpec spec;
  spec.stride_lr = a.stride;
  spec.clamp = true;
  const auto t0 = std::chrono::steady_clock::now();
  const Raster hr = upscale_color(img, model, spec);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_image(a.output, hr);
  out << model_label(model) << " x" << model.scale() << ": " << img.width << "x" << img.height << " -> " << hr.width
      << "x" << hr.height << ", reconstruction " << std::fixed << std::setprecision(4) << secs << " s\n";
  return kOk;
}

struct EvalArgs {
  std::string model, hr_dir;
  int scale = 3, shave = -1, stride = 1;
  bool json = false;
  bool unquantized = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream&) {
  std::optional<ProjectionModel> model;
  if (!a.model.empty()) {
    model = load_model(a.model);
    if (model->scale() != a.scale)
      throw Error(Errc::scale_mismatch, "model was trained for x" + std::to_string(model->scale()) +
                                            ", evaluation asked for x" + std::to_string(a.scale));
  }
  const auto files = require_images(a.hr_dir);
  const auto images = load_eval_set(files, a.scale);

  EvalOptions opt;
  opt.scale = a.scale;
  opt.shave = a.shave;
  opt.quantize = !a.unquantized;
  opt.recon.stride_lr = a.stride;

  std::vector<QualityReport> reports{evaluate_bicubic(images, opt)};
  if (model) reports.push_back(evaluate_model(images, *model, opt));

  if (a.json) {
    out << to_json(reports) << "\n";
  } else {
    out << to_table(reports) << "\n";
    out << to_csv(reports.back());
  }
  return kOk;
}

struct InspectArgs {
  std::string model, image;
  int bits = 12;
};

int cmd_inspect(const InspectArgs& a, std::ostream& out, std::ostream&) {
  if (!a.model.empty()) {
    const ProjectionModel m = load_model(a.model);
    const LpeConfig& cfg = m.config();
    out << "kind " << to_string(m.kind()) << "\n"
        << "scale " << m.scale() << "\n"
        << "bits " << cfg.total_bits << " (n_c " << cfg.n_c << ", n_d " << cfg.n_d << ", n_p " << cfg.n_p << ")\n"
        << "lambda " << m.lambda() << "\n"
        << "matrix " << m.rows() << "x" << ProjectionModel::cols() << "\n"
        << "classes present " << m.present_count() << " / " << m.class_count() << "\n"
        << "seed " << m.provenance().seed << "\n"
        << "samples-per-class " << m.provenance().n_o << "\n"
        << "corpus-digest " << to_hex(m.provenance().corpus_digest) << "\n";
    return kOk;
  }
  const LpeConfig cfg = make_config(a.bits);
  const Plane y = luma_levels(read_image(a.image));
  const Plane padded = pad_replicate(y, 1);
  std::map<std::uint32_t, std::uint64_t> hist;
  for (Eigen::Index r = 0; r < y.rows(); ++r)
    for (Eigen::Index c = 0; c < y.cols(); ++c) ++hist[encode_at(&padded(r + 1, c + 1), padded.cols(), cfg)];
  out << "class,count\n";
  for (const auto& [label, count] : hist) out << label << ',' << count << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local patch encoding super-resolution"};
  app.require_subcommand(1);

  DegradeArgs da;
  auto* degrade_cmd = app.add_subcommand("degrade", "Modcrop and bicubic-downscale a directory of images");
  degrade_cmd->add_option("--input", da.input, "HR image directory")->required();
  degrade_cmd->add_option("--output", da.output, "Output directory")->required();
  degrade_cmd->add_option("--scale", da.scale, "Scale factor")->check(CLI::IsMember({2, 3, 4}));

  TrainArgs ta;
  auto* train_cmd = app.add_subcommand("train", "Learn per-class projections from an HR corpus");
  train_cmd->add_option("--train-dir", ta.train_dir, "Directory of HR images or a manifest file")->required();
  train_cmd->add_option("--scale", ta.scale, "Scale factor")->check(CLI::IsMember({2, 3, 4}));
  train_cmd->add_option("--bits", ta.bits, "LPE code bit depth")->check(CLI::Range(1, 24));
  train_cmd->add_option("--projector", ta.projector, "p1, p2 or p3")->check(CLI::IsMember({"p1", "p2", "p3"}));
  train_cmd->add_option("--samples-per-class", ta.n_o, "Pairs kept per class")->check(CLI::PositiveNumber);
  train_cmd->add_option("--lambda", ta.lambda, "Ridge weight for p2")->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", ta.seed, "Sampling seed");
  train_cmd->add_option("--stride", ta.stride, "Harvest stride")->check(CLI::PositiveNumber);
  train_cmd->add_option("--out", ta.out_file, "Model file")->required();

  UpscaleArgs ua;
  auto* upscale_cmd = app.add_subcommand("upscale", "Upscale one image with a trained model");
  upscale_cmd->add_option("--model", ua.model, "Model file")->required();
  upscale_cmd->add_option("--input", ua.input, "LR image")->required();
  upscale_cmd->add_option("--output", ua.output, "HR image")->required();
  upscale_cmd->add_option("--stride", ua.stride, "LR stride for projection models")->check(CLI::Range(1, 3));
  upscale_cmd->add_option("--scale", ua.scale, "Expected model scale")->check(CLI::IsMember({2, 3, 4}));

  EvalArgs ea;
  auto* eval_cmd = app.add_subcommand("eval", "Degrade, upscale and score a directory of HR images");
  eval_cmd->add_option("--model", ea.model, "Model file (bicubic only when omitted)");
  eval_cmd->add_option("--hr-dir", ea.hr_dir, "HR image directory or manifest")->required();
  eval_cmd->add_option("--scale", ea.scale, "Scale factor")->check(CLI::IsMember({2, 3, 4}));
  eval_cmd->add_option("--shave", ea.shave, "Border excluded from metrics (default: scale)");
  eval_cmd->add_option("--stride", ea.stride, "LR stride for projection models")->check(CLI::Range(1, 3));
  eval_cmd->add_flag("--json", ea.json, "Emit JSON");
  eval_cmd->add_flag("--unquantized", ea.unquantized, "Score double-precision planes instead of 8-bit");

  InspectArgs ia;
  auto* inspect_cmd = app.add_subcommand("inspect", "Show a model header or an image's class histogram");
  auto* model_opt = inspect_cmd->add_option("--model", ia.model, "Model file");
  auto* image_opt = inspect_cmd->add_option("--image", ia.image, "Image file");
  inspect_cmd->add_option("--bits", ia.bits, "LPE code bit depth")->check(CLI::Range(1, 24));
  model_opt->excludes(image_opt);
  image_opt->excludes(model_opt);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*degrade_cmd) return cmd_degrade(da, out, err);
    if (*train_cmd) return cmd_train(ta, out, err);
    if (*upscale_cmd) return cmd_upscale(ua, out, err);
    if (*eval_cmd) return cmd_eval(ea, out, err);
    if (*inspect_cmd) {
      if (ia.model.empty() && ia.image.empty()) {
        err << "inspect: pass --model or --image\n";
        return kConfigError;
      }
      return cmd_inspect(ia, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kConfigError;
}

}  // namespace lpesr::cli
