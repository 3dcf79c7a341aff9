#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "lpesr/projectors.hpp"

namespace lpesr {

namespace {

constexpr std::uint8_t kVersion = 1;
constexpr char kMagic[4] = {'L', 'P', 'E', 'M'};

class Writer {
 public:
  template <typename T>
  void put(T v) {
    static_assert(std::is_integral_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes_.push_back(std::uint8_t(std::uint64_t(v) >> (8 * i)));
  }
  void put_f64(double v) { put(std::bit_cast<std::uint64_t>(v)); }
  void put_f32(float v) { put(std::bit_cast<std::uint32_t>(v)); }
  void put_raw(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    bytes_.insert(bytes_.end(), b, b + n);
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get(const char* what) {
    need(sizeof(T), what);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t(bytes_[pos_ + i]) << (8 * i);
    pos_ += sizeof(T);
    return T(v);
  }
  double get_f64(const char* what) { return std::bit_cast<double>(get<std::uint64_t>(what)); }
  float get_f32(const char* what) { return std::bit_cast<float>(get<std::uint32_t>(what)); }
  void get_raw(void* out, std::size_t n, const char* what) {
    need(n, what);
    std::memcpy(out, bytes_.data() + pos_, n);
    pos_ += n;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  [[noreturn]] void fail(Errc code, const std::string& msg) const {
    throw Error(code, "model file: " + msg + " at offset " + std::to_string(pos_));
  }

 private:
  void need(std::size_t n, const char* what) const {
    if (remaining() < n) fail(Errc::format_truncated, std::string("truncated ") + what);
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize(const ProjectionModel& m) {
  const LpeConfig& cfg = m.config();
  Writer w;
  w.put_raw(kMagic, 4);
  w.put(kVersion);
  w.put(std::uint8_t(m.kind()));
  w.put(std::uint8_t(m.scale()));
  w.put(std::uint8_t(cfg.total_bits));
  w.put(std::uint8_t(cfg.n_c));
  w.put(std::uint8_t(cfg.n_d));
  w.put(std::uint8_t(cfg.n_p));
  w.put_f64(m.lambda());
  w.put(std::uint16_t(m.rows()));
  w.put(std::uint16_t(ProjectionModel::cols()));
  w.put(std::uint32_t(m.class_count()));

  const std::size_t n = std::size_t(m.rows()) * ProjectionModel::cols();
  for (std::uint32_t c = 0; c < m.class_count(); ++c) {
    const float* d = m.data(c);
    w.put(std::uint8_t(d ? 1 : 0));
    if (d)
      for (std::size_t i = 0; i < n; ++i) w.put_f32(d[i]);
  }

  const Provenance& p = m.provenance();
  w.put(p.seed);
  w.put(p.n_o);
  w.put_raw(p.corpus_digest.data(), p.corpus_digest.size());
  return w.take();
}

ProjectionModel deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  char magic[4];
  r.get_raw(magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) throw Error(Errc::format_magic, "model file: bad magic at offset 0");
  const auto version = r.get<std::uint8_t>("header");
  if (version != kVersion) throw Error(Errc::format_version, "model file: unsupported version " + std::to_string(version));

  const auto kind = r.get<std::uint8_t>("header");
  const auto scale = r.get<std::uint8_t>("header");
  const auto total_bits = r.get<std::uint8_t>("header");
  const auto n_c = r.get<std::uint8_t>("header");
  const auto n_d = r.get<std::uint8_t>("header");
  const auto n_p = r.get<std::uint8_t>("header");
  const double lambda = r.get_f64("header");
  const auto rows = r.get<std::uint16_t>("header");
  const auto cols = r.get<std::uint16_t>("header");
  const auto class_count = r.get<std::uint32_t>("header");

  if (kind < 1 || kind > 3) r.fail(Errc::format_dims, "unknown projector kind " + std::to_string(kind));
  if (scale < 1) r.fail(Errc::format_dims, "scale is zero");
  if (total_bits < 1 || total_bits > 24) r.fail(Errc::format_dims, "bit depth out of range");
  const LpeConfig cfg = make_config(total_bits);
  if (cfg.n_c != n_c || cfg.n_d != n_d || cfg.n_p != n_p)
    r.fail(Errc::format_dims, "field widths do not match the bit depth");
  const auto pkind = ProjectorKind(kind);
  if (cols != 9 || rows != projector_rows(pkind, scale))
    r.fail(Errc::format_dims, "matrix shape " + std::to_string(rows) + "x" + std::to_string(cols) + " inconsistent");
  if (class_count != cfg.class_count()) r.fail(Errc::format_dims, "class count does not match the bit depth");

  ProjectionModel m(pkind, scale, cfg, lambda);
  const std::size_t n = std::size_t(rows) * cols;
  std::vector<float> values(n);
  for (std::uint32_t c = 0; c < class_count; ++c) {
    const auto flag = r.get<std::uint8_t>("class record");
    if (flag > 1) r.fail(Errc::format_dims, "presence flag must be 0 or 1");
    if (flag == 0) continue;
    for (std::size_t i = 0; i < n; ++i) values[i] = r.get_f32("matrix data");
    m.set_matrix_f(c, values.data());
  }

  Provenance p;
  p.seed = r.get<std::uint64_t>("footer");
  p.n_o = r.get<std::uint32_t>("footer");
  r.get_raw(p.corpus_digest.data(), p.corpus_digest.size(), "footer");
  if (r.remaining() != 0) r.fail(Errc::format_dims, "trailing bytes after footer");
  m.set_provenance(p);
  return m;
}

void save_model(const std::filesystem::path& path, const ProjectionModel& m) {
  const auto bytes = serialize(m);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw Error(Errc::io, "write failed: " + path.string());
}

ProjectionModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open model " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace lpesr
