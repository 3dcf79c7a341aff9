#include "lpesr/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace lpesr {

namespace {

Plane shaved(const Plane& p, int shave, bool quantize) {
  Plane region = p.block(shave, shave, p.rows() - 2 * shave, p.cols() - 2 * shave);
  return quantize ? quantize_levels(region) : region;
}

void check_pair(const Plane& a, const Plane& b, int shave, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::dimension, std::string(what) + ": size mismatch");
  if (shave < 0) throw Error(Errc::parameter, std::string(what) + ": negative shave");
  if (a.rows() <= 2 * shave || a.cols() <= 2 * shave)
    throw Error(Errc::dimension, std::string(what) + ": plane too small for the shave");
}

Eigen::VectorXd gaussian_taps(int size, double sigma) {
  Eigen::VectorXd g(size);
  const double c = (size - 1) / 2.0;
  for (int i = 0; i < size; ++i) g[i] = std::exp(-(i - c) * (i - c) / (2.0 * sigma * sigma));
  return g / g.sum();
}

// Separable correlation keeping only positions where the window fits.
Plane filter_valid(const Plane& p, const Eigen::VectorXd& g) {
  const Eigen::Index k = g.size();
  Plane horiz = Plane::Zero(p.rows(), p.cols() - k + 1);
  for (Eigen::Index t = 0; t < k; ++t) horiz += g[t] * p.middleCols(t, horiz.cols());
  Plane out = Plane::Zero(p.rows() - k + 1, horiz.cols());
  for (Eigen::Index t = 0; t < k; ++t) out += g[t] * horiz.middleRows(t, out.rows());
  return out;
}

std::string fmt(double v, int prec) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

}  // namespace

double psnr(const Plane& a, const Plane& b, int shave, bool quantize) {
  check_pair(a, b, shave, "psnr");
  const double mse = (shaved(a, shave, quantize) - shaved(b, shave, quantize)).squaredNorm() /
                     double((a.rows() - 2 * shave) * (a.cols() - 2 * shave));
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const Plane& a, const Plane& b, int shave, bool quantize) {
  check_pair(a, b, shave, "ssim");
  constexpr int kWindow = 11;
  const Plane x = shaved(a, shave, quantize);
  const Plane y = shaved(b, shave, quantize);
  if (x.rows() < kWindow || x.cols() < kWindow) throw Error(Errc::dimension, "ssim: region smaller than the window");

  static const Eigen::VectorXd g = gaussian_taps(kWindow, 1.5);
  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double c2 = (0.03 * 255) * (0.03 * 255);

  const Plane mu_x = filter_valid(x, g);
  const Plane mu_y = filter_valid(y, g);
  const auto mx = mu_x.array();
  const auto my = mu_y.array();
  const Eigen::ArrayXXd sxx = filter_valid(x.cwiseProduct(x), g).array() - mx * mx;
  const Eigen::ArrayXXd syy = filter_valid(y.cwiseProduct(y), g).array() - my * my;
  const Eigen::ArrayXXd sxy = filter_valid(x.cwiseProduct(y), g).array() - mx * my;

  const Eigen::ArrayXXd map = ((2.0 * mx * my + c1) * (2.0 * sxy + c2)) / ((mx * mx + my * my + c1) * (sxx + syy + c2));
  return map.mean();
}

void QualityReport::add(ImageQuality q) { per_image.push_back(std::move(q)); }

void QualityReport::finalize() {
  mean_psnr = 0.0;
  mean_ssim = 0.0;
  if (per_image.empty()) return;
  for (const auto& q : per_image) {
    mean_psnr += q.psnr;
    mean_ssim += q.ssim;
  }
  mean_psnr /= double(per_image.size());
  mean_ssim /= double(per_image.size());
}

std::string to_csv(const QualityReport& r) {
  std::ostringstream os;
  os << "name,psnr,ssim\n";
  for (const auto& q : r.per_image) os << q.name << ',' << fmt(q.psnr, 4) << ',' << fmt(q.ssim, 6) << '\n';
  os << "mean," << fmt(r.mean_psnr, 4) << ',' << fmt(r.mean_ssim, 6) << '\n';
  return os.str();
}

std::string to_table(const std::vector<QualityReport>& reports) {
  std::ostringstream os;
  if (reports.empty()) return "";
  os << "scale x" << reports.front().scale << ", shave " << reports.front().shave << ", "
     << reports.front().color_space << (reports.front().quantized ? ", 8-bit" : ", unquantized") << "\n";
  os << std::left << std::setw(24) << "image";
  for (const auto& r : reports) os << std::setw(22) << (r.method + " PSNR/SSIM");
  os << '\n';
  for (std::size_t i = 0; i < reports.front().per_image.size(); ++i) {
    os << std::setw(24) << reports.front().per_image[i].name;
    for (const auto& r : reports)
      os << std::setw(22) << (fmt(r.per_image[i].psnr, 2) + " / " + fmt(r.per_image[i].ssim, 4));
    os << '\n';
  }
  os << std::setw(24) << "average";
  for (const auto& r : reports) os << std::setw(22) << (fmt(r.mean_psnr, 2) + " / " + fmt(r.mean_ssim, 4));
  os << '\n';
  return os.str();
}

std::string to_json(const std::vector<QualityReport>& reports) {
  auto num = [](double v) -> nlohmann::json { return std::isinf(v) ? nlohmann::json("inf") : nlohmann::json(v); };
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["method"] = r.method;
    j["scale"] = r.scale;
    j["shave"] = r.shave;
    j["color_space"] = r.color_space;
    j["quantized"] = r.quantized;
    j["mean_psnr"] = num(r.mean_psnr);
    j["mean_ssim"] = r.mean_ssim;
    for (const auto& q : r.per_image) j["images"].push_back({{"name", q.name}, {"psnr", num(q.psnr)}, {"ssim", q.ssim}});
    doc.push_back(j);
  }
  return doc.dump(2);
}

}  // namespace lpesr
