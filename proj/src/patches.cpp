#include "lpesr/patches.hpp"

namespace lpesr {

namespace {

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Window window_at(const Plane& p, int row, int col) { return p.block<3, 3>(row - 1, col - 1); }

void check_stride(int stride) {
  if (stride < 1) throw Error(Errc::parameter, "stride must be >= 1");
}

}  // namespace

std::size_t TrainingBuckets::total() const {
  std::size_t n = 0;
  for (const auto& [label, pairs] : buckets) n += pairs.size();
  return n;
}

std::vector<std::uint32_t> TrainingBuckets::empty_classes() const {
  std::vector<std::uint32_t> out;
  for (const auto& [label, pairs] : buckets)
    if (pairs.empty()) out.push_back(label);
  return out;
}

std::optional<TrainingView> make_view(const Plane& hr, int scale) {
  if (scale < 1) throw Error(Errc::parameter, "scale must be >= 1");
  if (hr.rows() < 3 * scale || hr.cols() < 3 * scale) return std::nullopt;
  TrainingView v;
  v.scale = scale;
  v.hr = modcrop(hr, scale);
  v.lr = degrade(v.hr, scale);
  v.bicubic = resample(v.lr, {Scale::up(scale), -0.5, true});
  return v;
}

Vector9d centered(const Window& w) {
  Vector9d v = Eigen::Map<const Vector9d>(w.data());
  return v.array() - v.mean();
}

std::vector<Site> lr_sites(const TrainingView& view, int stride_lr) {
  check_stride(stride_lr);
  std::vector<Site> out;
  for (int i = 1; i + 1 < view.lr.rows(); i += stride_lr)
    for (int j = 1; j + 1 < view.lr.cols(); j += stride_lr) out.push_back({i, j});
  return out;
}

std::uint32_t lr_class(const TrainingView& view, Site site, const LpeConfig& cfg) {
  return encode_at(&view.lr(site.row, site.col), view.lr.cols(), cfg);
}

PatchPair lr_pair(const TrainingView& view, Site site, const LpeConfig& cfg) {
  const int s = view.scale;
  const int block = 3 * s;
  PatchPair p;
  const Window raw = window_at(view.lr, site.row, site.col);
  p.lr_vec = centered(raw);
  p.class_label = encode(raw, cfg).value;
  p.hr_vec.resize(block * block);
  const int top = s * (site.row - 1);
  const int left = s * (site.col - 1);
  for (int r = 0; r < block; ++r)
    for (int c = 0; c < block; ++c)
      p.hr_vec[r * block + c] = view.hr(top + r, left + c) - view.bicubic(top + r, left + c);
  return p;
}

std::vector<Site> hr_sites(const TrainingView& view, int stride_hr) {
  check_stride(stride_hr);
  std::vector<Site> out;
  for (int i = 1; i + 1 < view.bicubic.rows(); i += stride_hr)
    for (int j = 1; j + 1 < view.bicubic.cols(); j += stride_hr) out.push_back({i, j});
  return out;
}

std::uint32_t hr_class(const TrainingView& view, Site site, const LpeConfig& cfg) {
  return encode_at(&view.bicubic(site.row, site.col), view.bicubic.cols(), cfg);
}

PatchPair hr_pair(const TrainingView& view, Site site, const LpeConfig& cfg) {
  PatchPair p;
  const Window raw = window_at(view.bicubic, site.row, site.col);
  p.lr_vec = centered(raw);
  p.class_label = encode(raw, cfg).value;
  p.hr_vec.resize(1);
  p.hr_vec[0] = view.hr(site.row, site.col) - view.bicubic(site.row, site.col);
  return p;
}

std::vector<PatchPair> harvest(const Plane& hr_image, int scale, const LpeConfig& cfg, int stride_lr, bool* skipped) {
  check_stride(stride_lr);
  const auto view = make_view(hr_image, scale);
  if (skipped) *skipped = !view;
  std::vector<PatchPair> out;
  if (!view) return out;
  for (const Site& s : lr_sites(*view, stride_lr)) out.push_back(lr_pair(*view, s, cfg));
  return out;
}

std::vector<PatchPair> harvest_filter(const Plane& hr_image, int scale, const LpeConfig& cfg, int stride_hr,
                                      bool* skipped) {
  check_stride(stride_hr);
  const auto view = make_view(hr_image, scale);
  if (skipped) *skipped = !view;
  std::vector<PatchPair> out;
  if (!view) return out;
  for (const Site& s : hr_sites(*view, stride_hr)) out.push_back(hr_pair(*view, s, cfg));
  return out;
}

TrainingBuckets bucketize(std::vector<PatchPair> pairs, int scale, const LpeConfig& cfg, std::size_t n_o,
                          std::uint64_t seed) {
  TrainingBuckets b{scale, cfg, {}, n_o, seed};
  for (auto& p : pairs) b.buckets[p.class_label].push_back(std::move(p));
  return b;
}

std::uint64_t reservoir_draw(std::uint64_t seed, std::uint32_t label, std::uint64_t k, std::uint64_t bound) {
  const std::uint64_t h = mix(mix(mix(seed) ^ label) ^ k);
  // Multiply-shift maps the 64-bit hash onto [0, bound).
  return std::uint64_t((static_cast<unsigned __int128>(h) * bound) >> 64);
}

TrainingBuckets select(const TrainingBuckets& in) {
  TrainingBuckets out{in.scale, in.cfg, {}, in.n_o, in.seed};
  for (const auto& [label, pairs] : in.buckets) {
    Reservoir<PatchPair> r;
    for (const auto& p : pairs) r.offer(p, in.n_o, in.seed, label);
    out.buckets[label] = std::move(r.items());
  }
  return out;
}

}  // namespace lpesr
