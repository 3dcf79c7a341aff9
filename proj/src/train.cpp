#include <algorithm>
#include <string>
#include <unordered_map>

#include "lpesr/corpus.hpp"
#include "lpesr/image_io.hpp"
#include "lpesr/parallel.hpp"
#include "lpesr/projectors.hpp"

namespace lpesr {

namespace fs = std::filesystem;

namespace {

struct SiteRef {
  std::uint32_t image = 0;
  Site site;
};

void check_options(const TrainOptions& opt) {
  if (opt.scale < 2 || opt.scale > 4) throw Error(Errc::parameter, "train: scale must be 2, 3 or 4");
  validate(opt.cfg);
  if (opt.n_o < 1) throw Error(Errc::parameter, "train: samples per class must be >= 1");
  if (opt.kind == ProjectorKind::p2 && !(opt.lambda > 0.0)) throw Error(Errc::parameter, "train: lambda must be > 0");
  if (opt.stride_lr < 1 || opt.stride_hr < 1) throw Error(Errc::parameter, "train: strides must be >= 1");
}

}  // namespace

ProjectionModel train_model(std::span<const Plane> corpus, const TrainOptions& opt,
                            const std::array<std::uint8_t, 32>& digest, TrainStats* stats) {
  check_options(opt);
  if (corpus.empty()) throw Error(Errc::no_images, "train: empty corpus");

  const bool filter = opt.kind == ProjectorKind::p3;
  const auto sites_of = [&](const TrainingView& v) {
    return filter ? hr_sites(v, opt.stride_hr) : lr_sites(v, opt.stride_lr);
  };
  const auto class_of = [&](const TrainingView& v, Site s) {
    return filter ? hr_class(v, s, opt.cfg) : lr_class(v, s, opt.cfg);
  };

  TrainStats local;
  local.images = corpus.size();

  // Pass 1: classify every site and keep a per-class reservoir of site references.
  // Images are visited in corpus order and sites in raster order.
  std::unordered_map<std::uint32_t, Reservoir<SiteRef>> reservoirs;
  for (std::uint32_t img = 0; img < corpus.size(); ++img) {
    const auto view = make_view(corpus[img], opt.scale);
    if (!view) {
      ++local.skipped_images;
      continue;
    }
    const std::vector<Site> sites = sites_of(*view);
    std::vector<std::uint32_t> labels(sites.size());
    parallel_for(sites.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) labels[k] = class_of(*view, sites[k]);
    });
    for (std::size_t k = 0; k < sites.size(); ++k)
      reservoirs[labels[k]].offer({img, sites[k]}, opt.n_o, opt.seed, labels[k]);
    local.sites += sites.size();
  }

  // Pass 2: re-derive the selected pairs image by image and accumulate per-class moments.
  std::vector<std::vector<std::pair<Site, std::uint32_t>>> per_image(corpus.size());
  std::vector<std::uint32_t> labels;
  for (const auto& [label, r] : reservoirs) {
    labels.push_back(label);
    for (const SiteRef& ref : r.items()) per_image[ref.image].push_back({ref.site, label});
  }
  std::sort(labels.begin(), labels.end());

  const Eigen::Index out_dim = projector_rows(opt.kind, opt.scale);
  std::unordered_map<std::uint32_t, NormalEquations> moments;
  for (std::uint32_t label : labels) moments.emplace(label, NormalEquations(out_dim));

  for (std::uint32_t img = 0; img < corpus.size(); ++img) {
    auto& picks = per_image[img];
    if (picks.empty()) continue;
    std::sort(picks.begin(), picks.end(), [](const auto& a, const auto& b) {
      return a.first.row != b.first.row ? a.first.row < b.first.row : a.first.col < b.first.col;
    });
    const auto view = make_view(corpus[img], opt.scale);
    for (const auto& [site, label] : picks) {
      const PatchPair p = filter ? hr_pair(*view, site, opt.cfg) : lr_pair(*view, site, opt.cfg);
      moments.at(label).add(p.lr_vec, p.hr_vec);
      ++local.selected;
    }
  }

  ProjectionModel model(opt.kind, opt.scale, opt.cfg, opt.kind == ProjectorKind::p2 ? opt.lambda : 0.0,
                        {opt.seed, std::uint32_t(opt.n_o), digest});

  std::vector<MatrixX9d> solved(labels.size());
  parallel_for(labels.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const NormalEquations& ne = moments.at(labels[k]);
      solved[k] = opt.kind == ProjectorKind::p2 ? solve_p2(ne, opt.lambda) : solve_p1(ne);
    }
  });
  for (std::size_t k = 0; k < labels.size(); ++k) {
    model.set_matrix(labels[k], solved[k]);
    local.bucket_sizes.push_back(std::uint32_t(moments.at(labels[k]).count));
  }

  if (stats) *stats = std::move(local);
  return model;
}

ProjectionModel train_model(std::span<const fs::path> files, const TrainOptions& opt, TrainStats* stats) {
  if (files.empty()) throw Error(Errc::no_images, "train: no images found");
  std::vector<Plane> planes;
  std::string bad;
  for (const auto& f : files) {
    try {
      planes.push_back(luma_levels(read_image(f)));
    } catch (const Error& e) {
      bad += "\n  " + f.string() + ": " + e.what();
    }
  }
  if (!bad.empty()) throw Error(Errc::io, "unreadable corpus files:" + bad);
  return train_model(planes, opt, corpus_digest(files), stats);
}

}  // namespace lpesr
