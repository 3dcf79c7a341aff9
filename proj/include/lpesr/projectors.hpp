#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lpesr/image.hpp"
#include "lpesr/lpe.hpp"
#include "lpesr/patches.hpp"

namespace lpesr {

using Matrix9d = Eigen::Matrix<double, 9, 9>;
using MatrixX9d = Eigen::Matrix<double, Eigen::Dynamic, 9>;

inline constexpr double kPinvRtol = 1e-8;

/// Accumulated second moments of a class: sum y y^T and sum x y^T.
struct NormalEquations {
  Matrix9d yy = Matrix9d::Zero();
  MatrixX9d xy;
  std::size_t count = 0;

  explicit NormalEquations(Eigen::Index out_dim = 0) : xy(MatrixX9d::Zero(out_dim, 9)) {}

  template <typename DerivedY, typename DerivedX>
  void add(const Eigen::MatrixBase<DerivedY>& y, const Eigen::MatrixBase<DerivedX>& x) {
    yy.noalias() += y * y.transpose();
    xy.noalias() += x * y.transpose();
    ++count;
  }

  static NormalEquations from(std::span<const PatchPair> pairs);
};

/// Moore-Penrose inverse of a symmetric positive semi-definite matrix; eigenvalues
/// below rtol * largest are treated as zero.
Matrix9d pinv_psd(const Matrix9d& m, double rtol = kPinvRtol);

// Least squares P = (sum x y^T)(sum y y^T)^+. Returns a zero matrix when there are no samples.
MatrixX9d solve_p1(const NormalEquations& ne);
MatrixX9d solve_p1(std::span<const PatchPair> pairs);
/// Columns of `lr` (9 x N) and `hr` (d x N) are paired samples.
MatrixX9d solve_p1(const Eigen::MatrixXd& lr, const Eigen::MatrixXd& hr);

// Ridge P = X Y^T (Y Y^T + lambda I)^-1.
MatrixX9d solve_p2(const NormalEquations& ne, double lambda);
MatrixX9d solve_p2(std::span<const PatchPair> pairs, double lambda);
MatrixX9d solve_p2(const Eigen::MatrixXd& lr, const Eigen::MatrixXd& hr, double lambda);

/// argmin |A f - B|^2 with rows of A (N x 9) as patches; returned as a 1 x 9 row.
Eigen::Matrix<double, 1, 9> solve_p3(const Eigen::MatrixXd& rows, const Eigen::VectorXd& targets);

enum class ProjectorKind : std::uint8_t { p1 = 1, p2 = 2, p3 = 3 };

const char* to_string(ProjectorKind k);
ProjectorKind parse_projector(const std::string& name);

struct Provenance {
  std::uint64_t seed = 0;
  std::uint32_t n_o = 0;
  std::array<std::uint8_t, 32> corpus_digest{};

  bool operator==(const Provenance&) const = default;
};

/// Per-class projection matrices (rows x 9, or 1 x 9 filters), stored in single precision.
/// Absent classes read as zero.
class ProjectionModel {
 public:
  using MatrixRef = Eigen::Map<const Eigen::Matrix<float, Eigen::Dynamic, 9, Eigen::RowMajor>>;

  ProjectionModel() = default;
  ProjectionModel(ProjectorKind kind, int scale, LpeConfig cfg, double lambda, Provenance provenance = {});

  ProjectorKind kind() const { return kind_; }
  int scale() const { return scale_; }
  const LpeConfig& config() const { return cfg_; }
  double lambda() const { return lambda_; }
  const Provenance& provenance() const { return provenance_; }
  void set_provenance(const Provenance& p) { provenance_ = p; }
  int rows() const { return rows_; }
  static constexpr int cols() { return 9; }
  std::uint32_t class_count() const { return cfg_.class_count(); }

  bool present(std::uint32_t label) const { return slot_[label] >= 0; }
  std::size_t present_count() const { return storage_.size() / (std::size_t(rows_) * 9); }

  /// Row-major rows x 9 data of a class, or nullptr when absent.
  const float* data(std::uint32_t label) const {
    const std::int32_t s = slot_[label];
    return s < 0 ? nullptr : storage_.data() + std::size_t(s) * rows_ * 9;
  }

  /// Zero matrix for absent classes.
  Eigen::MatrixXf matrix(std::uint32_t label) const;

  void set_matrix(std::uint32_t label, const Eigen::Ref<const Eigen::MatrixXd>& m);
  void set_matrix_f(std::uint32_t label, const float* values);

  bool operator==(const ProjectionModel& other) const;

 private:
  ProjectorKind kind_ = ProjectorKind::p1;
  int scale_ = 0;
  LpeConfig cfg_;
  double lambda_ = 0.0;
  Provenance provenance_;
  int rows_ = 0;
  std::vector<std::int32_t> slot_;
  std::vector<float> storage_;
};

/// Output rows of a projector of the given kind at scale s: 9 s^2, or 1 for filters.
int projector_rows(ProjectorKind kind, int scale);

struct TrainOptions {
  int scale = 3;
  LpeConfig cfg = make_config(12);
  ProjectorKind kind = ProjectorKind::p1;
  std::size_t n_o = 2048;
  double lambda = 0.01;
  std::uint64_t seed = 0;
  int stride_lr = 1;
  int stride_hr = 1;
};

struct TrainStats {
  std::size_t images = 0;
  std::size_t skipped_images = 0;
  std::size_t sites = 0;
  std::size_t selected = 0;
  std::vector<std::uint32_t> bucket_sizes;  // per class, after selection
};

/// Training on in-memory HR luma planes. `digest` goes into the model provenance.
ProjectionModel train_model(std::span<const Plane> corpus, const TrainOptions& opt,
                            const std::array<std::uint8_t, 32>& digest = {}, TrainStats* stats = nullptr);

/// Training on image files; the digest is taken over the sorted file names.
ProjectionModel train_model(std::span<const std::filesystem::path> files, const TrainOptions& opt,
                            TrainStats* stats = nullptr);

void save_model(const std::filesystem::path& path, const ProjectionModel& m);
ProjectionModel load_model(const std::filesystem::path& path);

std::vector<std::uint8_t> serialize(const ProjectionModel& m);
ProjectionModel deserialize(std::span<const std::uint8_t> bytes);

}  // namespace lpesr
