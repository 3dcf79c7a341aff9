#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "lpesr/image.hpp"
#include "lpesr/lpe.hpp"

namespace lpesr {

using Vector9d = Eigen::Matrix<double, 9, 1>;

/// One training sample. For projection training hr_vec is the (3s)x(3s) HR residual block,
/// row-major; for filter training it holds the single residual at the window centre.
struct PatchPair {
  Vector9d lr_vec = Vector9d::Zero();
  Eigen::VectorXd hr_vec;
  std::uint32_t class_label = 0;
};

struct TrainingBuckets {
  int scale = 0;
  LpeConfig cfg;
  std::map<std::uint32_t, std::vector<PatchPair>> buckets;
  std::size_t n_o = 2048;
  std::uint64_t seed = 0;

  std::size_t total() const;
  std::vector<std::uint32_t> empty_classes() const;
};

/// Planes derived from one HR training image: the modcropped HR, its degraded LR,
/// and the bicubic re-upscale of that LR back to HR size.
struct TrainingView {
  int scale = 0;
  Plane hr;
  Plane lr;
  Plane bicubic;
};

/// Empty when the degraded image cannot hold a single 3x3 window.
std::optional<TrainingView> make_view(const Plane& hr, int scale);

struct Site {
  int row = 0;
  int col = 0;
  bool operator==(const Site&) const = default;
};

// Projection domain: LR centres whose (3s)x(3s) HR block lies inside the image.
std::vector<Site> lr_sites(const TrainingView& view, int stride_lr);
std::uint32_t lr_class(const TrainingView& view, Site site, const LpeConfig& cfg);
PatchPair lr_pair(const TrainingView& view, Site site, const LpeConfig& cfg);

// Filter domain: interior pixels of the bicubic plane.
std::vector<Site> hr_sites(const TrainingView& view, int stride_hr);
std::uint32_t hr_class(const TrainingView& view, Site site, const LpeConfig& cfg);
PatchPair hr_pair(const TrainingView& view, Site site, const LpeConfig& cfg);

/// Mean-removed copy of a 3x3 window, flattened row-major.
Vector9d centered(const Window& w);

/// All projection-training pairs of one image, in raster order. Empty (and `skipped` set)
/// when the image is too small after degradation.
std::vector<PatchPair> harvest(const Plane& hr_image, int scale, const LpeConfig& cfg, int stride_lr,
                               bool* skipped = nullptr);

/// Filter-training counterpart of harvest.
std::vector<PatchPair> harvest_filter(const Plane& hr_image, int scale, const LpeConfig& cfg, int stride_hr,
                                      bool* skipped = nullptr);

TrainingBuckets bucketize(std::vector<PatchPair> pairs, int scale, const LpeConfig& cfg, std::size_t n_o,
                          std::uint64_t seed);

/// Uniform sampling without replacement of at most n_o pairs per bucket.
///
/// Each bucket runs Algorithm R over its items in stored order; the random draw for the
/// k-th offered item is a counter-based hash of (seed, class, k), so results do not depend
/// on how many buckets exist or in which order they are processed.
TrainingBuckets select(const TrainingBuckets& buckets);

/// Streaming form of the per-bucket selection used by select and by training.
template <typename T>
class Reservoir {
 public:
  void offer(T item, std::size_t capacity, std::uint64_t seed, std::uint32_t label);

  const std::vector<T>& items() const { return items_; }
  std::vector<T>& items() { return items_; }
  std::uint64_t seen() const { return seen_; }

 private:
  std::vector<T> items_;
  std::uint64_t seen_ = 0;
};

/// Draw in [0, bound) for the k-th item of a bucket.
std::uint64_t reservoir_draw(std::uint64_t seed, std::uint32_t label, std::uint64_t k, std::uint64_t bound);

template <typename T>
void Reservoir<T>::offer(T item, std::size_t capacity, std::uint64_t seed, std::uint32_t label) {
  const std::uint64_t k = seen_++;
  if (items_.size() < capacity) {
    items_.push_back(std::move(item));
    return;
  }
  if (capacity == 0) return;
  const std::uint64_t j = reservoir_draw(seed, label, k, k + 1);
  if (j < capacity) items_[j] = std::move(item);
}

}  // namespace lpesr
