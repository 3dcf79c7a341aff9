// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//
//   lpesr_acceptance [--criterion N ...] [--set5 DIR] [--t91 DIR] [--proxy DIR]
//
// Criteria 1-4 need the Set5 evaluation images and the 91-image training corpus
// (LPE_SET5_DIR, LPE_T91_DIR). Without them they report SKIP, followed by an
// informational run on a proxy corpus of natural images when one is available.
// Exit status: 1 if anything failed, 77 if everything selected was skipped, else 0.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "lpesr/corpus.hpp"
#include "lpesr/evaluate.hpp"
#include "lpesr/image_io.hpp"
#include "lpesr/projectors.hpp"
#include "lpesr/reconstruct.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace lpesr;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kBicubicPsnrTol = 0.15;
constexpr double kBicubicSsimTol = 0.005;
constexpr double kLpePsnrTol = 0.35;
constexpr double kLpeSsimTol = 0.01;
constexpr double kParityTol = 0.15;
constexpr double kRuntimeRatio = 0.5;
constexpr double kPushThroughTol = 1e-9;
constexpr double kOracleRelTol = 1e-6;
constexpr double kBicubicEquivTol = 1e-12;

constexpr int kScales[] = {2, 3, 4};
const std::map<int, std::pair<double, double>> kBicubicRef = {{2, {33.66, 0.9383}}, {3, {30.40, 0.8804}}, {4, {28.44, 0.8250}}};
const std::map<int, std::pair<double, double>> kLpe12P1Ref = {{2, {36.19, 0.9582}}, {3, {32.41, 0.9161}}, {4, {30.22, 0.8773}}};

// Proxy corpus: scikit-image sample photographs, split into evaluation and training images.
const std::vector<std::string> kProxyEval = {"astronaut.png", "camera.png", "chelsea.png", "coffee.png",
                                             "motorcycle_left.png"};
const std::vector<std::string> kProxyTrain = {"brick.png", "cell.png", "coins.png", "grass.png", "gravel.png",
                                              "horse.png", "ihc.png", "moon.png", "motorcycle_right.png",
                                              "page.png", "text.png"};

enum class Status { pass, fail, skip };

struct Outcome {
  Status status;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string fmt_e(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Corpus {
  std::string label;
  std::vector<fs::path> eval_files;
  std::vector<Plane> train;
  std::array<std::uint8_t, 32> digest{};
};

std::vector<Plane> load_luma(const std::vector<fs::path>& files) {
  std::vector<Plane> out;
  for (const auto& f : files) out.push_back(luma_levels(read_image(f)));
  return out;
}

class Context {
 public:
  Context(fs::path set5, fs::path t91, fs::path proxy) : set5_(std::move(set5)), t91_(std::move(t91)), proxy_(std::move(proxy)) {}

  bool has_benchmark() const { return !set5_.empty() && !t91_.empty() && fs::exists(set5_) && fs::exists(t91_); }
  bool has_set5() const { return !set5_.empty() && fs::exists(set5_); }

  bool has_proxy() const {
    if (proxy_.empty()) return false;
    for (const auto& n : kProxyEval)
      if (!fs::exists(proxy_ / n)) return false;
    for (const auto& n : kProxyTrain)
      if (!fs::exists(proxy_ / n)) return false;
    return true;
  }

  const Corpus& benchmark() {
    if (!bench_) {
      bench_.emplace();
      bench_->label = "Set5 / 91 images";
      bench_->eval_files = list_images(set5_);
      if (!t91_.empty() && fs::exists(t91_)) {
        const auto files = list_images(t91_);
        bench_->train = load_luma(files);
        bench_->digest = corpus_digest(files);
      }
    }
    return *bench_;
  }

  const Corpus& proxy() {
    if (!proxy_corpus_) {
      proxy_corpus_.emplace();
      proxy_corpus_->label = "proxy";
      std::vector<fs::path> train;
      for (const auto& n : kProxyEval) proxy_corpus_->eval_files.push_back(proxy_ / n);
      for (const auto& n : kProxyTrain) train.push_back(proxy_ / n);
      proxy_corpus_->train = load_luma(train);
      proxy_corpus_->digest = corpus_digest(train);
    }
    return *proxy_corpus_;
  }

  const std::vector<EvalImage>& eval_set(const Corpus& c, int s) {
    auto key = std::make_pair(c.label, s);
    auto it = eval_.find(key);
    if (it == eval_.end()) it = eval_.emplace(key, load_eval_set(c.eval_files, s)).first;
    return it->second;
  }

  const ProjectionModel& model(const Corpus& c, ProjectorKind kind, int bits, int s) {
    auto key = std::make_tuple(c.label, int(kind), bits, s);
    auto it = models_.find(key);
    if (it == models_.end()) {
      TrainOptions opt;
      opt.scale = s;
      opt.cfg = make_config(bits);
      opt.kind = kind;
      opt.n_o = 2048;
      opt.lambda = 0.01;
      opt.seed = 0;
      const auto t0 = std::chrono::steady_clock::now();
      ProjectionModel m = train_model(c.train, opt, c.digest);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cerr << "  trained " << model_label(m) << " x" << s << " on " << c.label << " in " << fmt(secs, 1) << " s ("
                << m.present_count() << " classes)\n";
      it = models_.emplace(key, std::move(m)).first;
    }
    return it->second;
  }

  QualityReport bicubic(const Corpus& c, int s) {
    EvalOptions opt;
    opt.scale = s;
    return evaluate_bicubic(eval_set(c, s), opt);
  }

  QualityReport lpe(const Corpus& c, ProjectorKind kind, int bits, int s) {
    EvalOptions opt;
    opt.scale = s;
    return evaluate_model(eval_set(c, s), model(c, kind, bits, s), opt);
  }

  const fs::path& proxy_dir() const { return proxy_; }

 private:
  fs::path set5_, t91_, proxy_;
  std::optional<Corpus> bench_, proxy_corpus_;
  std::map<std::pair<std::string, int>, std::vector<EvalImage>> eval_;
  std::map<std::tuple<std::string, int, int, int>, ProjectionModel> models_;
};

std::string missing_data_reason(Context& ctx, bool needs_training) {
  std::string r = "Set5";
  if (needs_training) r += " and the 91-image training corpus";
  r += " not available (set LPE_SET5_DIR";
  if (needs_training) r += " and LPE_T91_DIR";
  r += ")";
  if (!ctx.has_proxy()) r += "; no proxy images either";
  return r;
}

// ---- criterion 1 ---------------------------------------------------------------

std::string bicubic_rows(Context& ctx, const Corpus& c) {
  std::string d;
  for (int s : kScales) {
    const QualityReport r = ctx.bicubic(c, s);
    d += " x" + std::to_string(s) + " " + fmt(r.mean_psnr, 2) + " dB/" + fmt(r.mean_ssim, 4);
  }
  return d;
}

Outcome criterion1(Context& ctx) {
  if (!ctx.has_set5()) {
    std::string d = missing_data_reason(ctx, false);
    if (ctx.has_proxy()) d += "; proxy bicubic:" + bicubic_rows(ctx, ctx.proxy());
    return {Status::skip, d};
  }
  bool ok = true;
  std::string d;
  for (int s : kScales) {
    const QualityReport r = ctx.bicubic(ctx.benchmark(), s);
    const auto [p_ref, s_ref] = kBicubicRef.at(s);
    const bool good = std::abs(r.mean_psnr - p_ref) <= kBicubicPsnrTol && std::abs(r.mean_ssim - s_ref) <= kBicubicSsimTol;
    ok &= good;
    d += " x" + std::to_string(s) + " " + fmt(r.mean_psnr, 2) + "/" + fmt(r.mean_ssim, 4) + " (ref " + fmt(p_ref, 2) +
         "/" + fmt(s_ref, 4) + (good ? ")" : ", out of tolerance)");
  }
  return {ok ? Status::pass : Status::fail, "bicubic PSNR/SSIM:" + d};
}

// ---- criterion 2 ---------------------------------------------------------------

Outcome criterion2(Context& ctx) {
  if (!ctx.has_benchmark()) {
    std::string d = missing_data_reason(ctx, true);
    if (ctx.has_proxy()) {
      d += "; proxy LPE12bits_P1:";
      for (int s : kScales) {
        const QualityReport r = ctx.lpe(ctx.proxy(), ProjectorKind::p1, 12, s);
        d += " x" + std::to_string(s) + " " + fmt(r.mean_psnr, 2) + "/" + fmt(r.mean_ssim, 4) + " (bicubic " +
             fmt(ctx.bicubic(ctx.proxy(), s).mean_psnr, 2) + ")";
      }
    }
    return {Status::skip, d};
  }
  bool ok = true;
  std::string d;
  for (int s : kScales) {
    const QualityReport r = ctx.lpe(ctx.benchmark(), ProjectorKind::p1, 12, s);
    const auto [p_ref, s_ref] = kLpe12P1Ref.at(s);
    const bool good = std::abs(r.mean_psnr - p_ref) <= kLpePsnrTol && std::abs(r.mean_ssim - s_ref) <= kLpeSsimTol;
    ok &= good;
    d += " x" + std::to_string(s) + " " + fmt(r.mean_psnr, 2) + "/" + fmt(r.mean_ssim, 4) + " (ref " + fmt(p_ref, 2) +
         "/" + fmt(s_ref, 4) + (good ? ")" : ", out of tolerance)");
  }
  return {ok ? Status::pass : Status::fail, "LPE12bits_P1 PSNR/SSIM:" + d};
}

// ---- criterion 3 ---------------------------------------------------------------

std::pair<bool, std::string> parity(Context& ctx, const Corpus& c) {
  bool ok = true;
  std::string d;
  for (int s : kScales) {
    const double p1 = ctx.lpe(c, ProjectorKind::p1, 12, s).mean_psnr;
    const double p2 = ctx.lpe(c, ProjectorKind::p2, 12, s).mean_psnr;
    const bool good = std::abs(p1 - p2) <= kParityTol;
    ok &= good;
    d += " x" + std::to_string(s) + " P1 " + fmt(p1, 2) + " P2 " + fmt(p2, 2) + " |diff| " + fmt(std::abs(p1 - p2), 3);
  }
  return {ok, d};
}

Outcome criterion3(Context& ctx) {
  if (!ctx.has_benchmark()) {
    std::string d = missing_data_reason(ctx, true);
    if (ctx.has_proxy()) {
      const auto [ok, pd] = parity(ctx, ctx.proxy());
      d += "; proxy" + pd + (ok ? " (holds)" : " (does not hold)");
    }
    return {Status::skip, d};
  }
  const auto [ok, d] = parity(ctx, ctx.benchmark());
  return {ok ? Status::pass : Status::fail, "mean PSNR" + d};
}

// ---- criterion 4 ---------------------------------------------------------------

std::pair<bool, std::string> ordering(Context& ctx, const Corpus& c) {
  bool ok = true;
  std::string d;
  for (int s : kScales) {
    const double bic = ctx.bicubic(c, s).mean_psnr;
    const double b2 = ctx.lpe(c, ProjectorKind::p1, 2, s).mean_psnr;
    const double b10 = ctx.lpe(c, ProjectorKind::p1, 10, s).mean_psnr;
    const double b12 = ctx.lpe(c, ProjectorKind::p1, 12, s).mean_psnr;
    const double p3 = ctx.lpe(c, ProjectorKind::p3, 12, s).mean_psnr;
    const bool chain = bic < b2 && b2 < b10 && b10 < b12;
    const bool filt = p3 < b12;
    ok &= chain && filt;
    d += " x" + std::to_string(s) + " [bicubic " + fmt(bic, 2) + " < 2b " + fmt(b2, 2) + " < 10b " + fmt(b10, 2) +
         " < 12b " + fmt(b12, 2) + (chain ? " ok" : " VIOLATED") + "; P3 " + fmt(p3, 2) + (filt ? " < P1 ok]" : " >= P1 VIOLATED]");
  }
  return {ok, d};
}

Outcome criterion4(Context& ctx) {
  if (!ctx.has_benchmark()) {
    std::string d = missing_data_reason(ctx, true);
    if (ctx.has_proxy()) {
      const auto [ok, od] = ordering(ctx, ctx.proxy());
      d += "; proxy" + od + (ok ? " (holds)" : " (does not hold)");
    }
    return {Status::skip, d};
  }
  const auto [ok, d] = ordering(ctx, ctx.benchmark());
  return {ok ? Status::pass : Status::fail, "mean PSNR" + d};
}

// ---- criterion 5 ---------------------------------------------------------------

Outcome criterion5(Context& ctx) {
  // Input: a 512x512 natural photograph when available, else a synthetic one.
  Plane input;
  std::string image = "synthetic 512x512";
  const fs::path astronaut = ctx.proxy_dir() / "astronaut.png";
  if (!ctx.proxy_dir().empty() && fs::exists(astronaut)) {
    input = luma_levels(read_image(astronaut));
    image = "astronaut.png 512x512";
  } else {
    input = test::textured(512, 512, 2024);
  }

  const Corpus* corpus = nullptr;
  Corpus synthetic;
  if (ctx.has_benchmark()) {
    corpus = &ctx.benchmark();
  } else if (ctx.has_proxy()) {
    corpus = &ctx.proxy();
  } else {
    synthetic.label = "synthetic";
    for (unsigned k = 0; k < 8; ++k) synthetic.train.push_back(test::textured(256, 256, 100 + k));
    corpus = &synthetic;
  }
  const ProjectionModel& p1 = ctx.model(*corpus, ProjectorKind::p1, 12, 3);
  const ProjectionModel& p3 = ctx.model(*corpus, ProjectorKind::p3, 12, 3);

  // Single-threaded, as the reference timings are. The two modes alternate so load
  // drift hits both; each keeps its fastest run.
  ReconSpec spec;
  spec.threads = 1;
  auto timed = [&](const ProjectionModel& m) {
    const auto t0 = std::chrono::steady_clock::now();
    const Plane out = upscale(input, m, spec);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out.rows() == 1536 && out.cols() == 1536 ? secs : -1.0;
  };
  double t1 = 1e300, t3 = 1e300;
  for (int k = 0; k < 15; ++k) {
    t1 = std::min(t1, timed(p1));
    t3 = std::min(t3, timed(p3));
  }
  const double ratio = t3 / t1;
  const bool ok = t1 > 0 && t3 > 0 && ratio <= kRuntimeRatio;
  return {ok ? Status::pass : Status::fail, image + " x3, models from " + corpus->label + ": P1 " + fmt(t1 * 1e3, 2) +
                                                " ms, P3 " + fmt(t3 * 1e3, 2) + " ms, ratio " + fmt(ratio, 3) +
                                                " (limit " + fmt(kRuntimeRatio, 2) + ")"};
}

// ---- criterion 6 ---------------------------------------------------------------

Eigen::MatrixXd gaussian(Eigen::Index r, Eigen::Index c, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = n(rng);
  return m;
}

Outcome criterion6(Context&) {
  std::mt19937 rng(6);
  std::uniform_int_distribution<int> small(1, 8), big(20, 300);
  const int dims[] = {36, 81, 144};
  const double lambdas[] = {0.001, 0.01, 0.1, 1.0};

  // (a) push-through form against the sample-space ridge formula.
  double worst_a = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = small(rng), d = dims[t % 3];
    const Eigen::MatrixXd y = 30.0 * gaussian(9, n, rng), x = 10.0 * gaussian(d, n, rng);
    const double lambda = lambdas[t % 4];
    worst_a = std::max(worst_a, (solve_p2(y, x, lambda) - oracle::ridge_sample_space(y, x, lambda)).cwiseAbs().maxCoeff());
  }

  // (b) least squares against a complete orthogonal decomposition.
  double worst_p1 = 0.0, worst_p3 = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = big(rng);
    Eigen::MatrixXd y = 30.0 * gaussian(9, n, rng);
    if (t % 2) y = y.rowwise() - y.colwise().mean();  // mean-removed, rank 8
    const Eigen::MatrixXd x = 10.0 * gaussian(dims[t % 3], n, rng);
    const Eigen::MatrixXd ref = oracle::least_squares(y, x);
    worst_p1 = std::max(worst_p1, (solve_p1(y, x) - ref).norm() / ref.norm());

    const Eigen::MatrixXd a = 30.0 * gaussian(n, 9, rng);
    const Eigen::VectorXd b = 10.0 * gaussian(n, 1, rng);
    const Eigen::MatrixXd ref3 = oracle::least_squares(a.transpose(), b.transpose());
    worst_p3 = std::max(worst_p3, (solve_p3(a, b) - ref3).norm() / ref3.norm());
  }

  // (c) perturbation optimality.
  int held = 0;
  const Eigen::MatrixXd y = 30.0 * gaussian(9, 150, rng), x = 10.0 * gaussian(81, 150, rng);
  const Eigen::MatrixXd a = 30.0 * gaussian(150, 9, rng);
  const Eigen::VectorXd b = 10.0 * gaussian(150, 1, rng);
  const double lambda = 0.01;
  const Eigen::MatrixXd p1 = solve_p1(y, x), p2 = solve_p2(y, x, lambda);
  const Eigen::MatrixXd p3 = solve_p3(a, b);
  auto loss1 = [&](const Eigen::MatrixXd& p) { return (p * y - x).squaredNorm(); };
  auto loss2 = [&](const Eigen::MatrixXd& p) { return (p * y - x).squaredNorm() + lambda * p.squaredNorm(); };
  auto loss3 = [&](const Eigen::MatrixXd& f) { return (a * f.transpose() - b).squaredNorm(); };
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd d = gaussian(81, 9, rng);
    d *= 1e-3 / d.norm();
    Eigen::MatrixXd f = gaussian(1, 9, rng);
    f *= 1e-3 / f.norm();
    held += loss1(p1 + d) >= loss1(p1);
    held += loss2(p2 + d) >= loss2(p2);
    held += loss3(p3 + f) >= loss3(p3);
  }

  const bool ok = worst_a <= kPushThroughTol && worst_p1 <= kOracleRelTol && worst_p3 <= kOracleRelTol && held == 60;
  return {ok ? Status::pass : Status::fail,
          "(a) push-through max diff " + fmt_e(worst_a) + " on 100 instances; (b) rel. Frobenius P1 " + fmt_e(worst_p1) +
              ", P3 " + fmt_e(worst_p3) + " on 100 instances; (c) optimality held " + std::to_string(held) + "/60"};
}

// ---- criterion 7 ---------------------------------------------------------------

Outcome criterion7(Context&) {
  std::vector<std::string> failed;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 255.0);

  // Class-range fuzz and determinism.
  const int bit_depths[] = {2, 8, 10, 12, 17, 24};
  for (int k = 0; k < 1000000; ++k) {
    Window w;
    for (int i = 0; i < 9; ++i) w.data()[i] = (k % 2) ? std::floor(u(rng)) : u(rng);
    const LpeConfig cfg = make_config(bit_depths[k % 6]);
    const LpeCode c = encode(w, cfg);
    if (c.value >= cfg.class_count() || c.bits != cfg.total_bits) {
      failed.push_back("code range");
      break;
    }
    if (encode(w, cfg) != c) {
      failed.push_back("encode determinism");
      break;
    }
  }

  // Zero model against bicubic.
  const Plane lr = test::textured(40, 37, 70);
  double worst = 0.0;
  for (int s : kScales)
    for (ProjectorKind kind : {ProjectorKind::p1, ProjectorKind::p2, ProjectorKind::p3}) {
      ProjectionModel zero(kind, s, make_config(12), 0.0);
      const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(zero.rows(), 9);
      for (std::uint32_t c = 0; c < zero.class_count(); ++c) zero.set_matrix(c, z);
      worst = std::max(worst, (upscale(lr, zero) - resample(lr, {Scale::up(s), -0.5, true})).cwiseAbs().maxCoeff());
    }
  if (worst > kBicubicEquivTol) failed.push_back("zero model vs bicubic (" + fmt_e(worst) + ")");

  // Trained models: constant fixed point, round trip, seed reproducibility.
  const std::vector<Plane> corpus{test::textured(120, 110, 71), test::textured(100, 130, 72)};
  TrainOptions opt;
  opt.scale = 3;
  opt.n_o = 64;
  opt.seed = 11;
  for (ProjectorKind kind : {ProjectorKind::p1, ProjectorKind::p2, ProjectorKind::p3}) {
    opt.kind = kind;
    const ProjectionModel m = train_model(corpus, opt);
    const Plane flat = upscale(Plane::Constant(20, 24, 87.0), m);
    if ((flat.array() - 87.0).abs().maxCoeff() > kBicubicEquivTol) failed.push_back("constant fixed point");
    const auto bytes = serialize(m);
    if (!(deserialize(bytes) == m) || serialize(deserialize(bytes)) != bytes) failed.push_back("save/load round trip");
    if (serialize(train_model(corpus, opt)) != bytes) failed.push_back("seed reproducibility");
  }
  test::TempDir dir("accept");
  opt.kind = ProjectorKind::p1;
  const ProjectionModel m = train_model(corpus, opt);
  save_model(dir / "m.lpem", m);
  if (!(load_model(dir / "m.lpem") == m)) failed.push_back("file round trip");

  if (!failed.empty()) {
    std::string d = "failed:";
    for (const auto& f : failed) d += " " + f + ";";
    return {Status::fail, d};
  }
  return {Status::pass, "1e6-patch code-range fuzz, encode determinism, zero model = bicubic (max " + fmt_e(worst) +
                            "), constant fixed point, bit-exact save/load, byte-identical retraining"};
}

// ---- criterion 8 ---------------------------------------------------------------

Outcome criterion8(Context&) {
  return {Status::skip, "out of scope: SRCNN/VDSR comparison rows and IFC columns are not reproduced"};
}

const char* kNames[] = {"",
                        "bicubic calibration",
                        "LPE12bits_P1 accuracy",
                        "P1/P2 parity",
                        "ordering",
                        "runtime ordering",
                        "solver oracles",
                        "pipeline invariants",
                        "external rows"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LPE super-resolution acceptance suite"};
  std::vector<int> selected;
  std::string set5 = std::getenv("LPE_SET5_DIR") ? std::getenv("LPE_SET5_DIR") : "";
  std::string t91 = std::getenv("LPE_T91_DIR") ? std::getenv("LPE_T91_DIR") : "";
  std::string proxy = test::proxy_dir().string();
  app.add_option("--criterion", selected, "Criteria to run (default: all)")->check(CLI::Range(1, 8));
  app.add_option("--set5", set5, "Set5 HR images");
  app.add_option("--t91", t91, "91-image training corpus");
  app.add_option("--proxy", proxy, "Proxy natural images");
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8};

  const std::function<Outcome(Context&)> criteria[] = {nullptr,    criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
  Context ctx(set5, t91, proxy);
  int fails = 0, skips = 0;
  for (int c : selected) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[c](ctx);
    } catch (const std::exception& e) {
      o = {Status::fail, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    std::cout << "[" << tag << "] " << c << " " << kNames[c] << ": " << o.detail << " [" << fmt(secs, 1) << " s]"
              << std::endl;
    fails += o.status == Status::fail;
    skips += o.status == Status::skip;
  }
  if (fails) return 1;
  if (skips == int(selected.size())) return 77;
  return 0;
}
