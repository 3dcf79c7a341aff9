#include "lpesr/projectors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace lpesr {

NormalEquations NormalEquations::from(std::span<const PatchPair> pairs) {
  NormalEquations ne(pairs.empty() ? 0 : pairs.front().hr_vec.size());
  for (const auto& p : pairs) {
    if (p.hr_vec.size() != ne.xy.rows()) throw Error(Errc::dimension, "pairs disagree on hr_vec length");
    ne.add(p.lr_vec, p.hr_vec);
  }
  return ne;
}

Matrix9d pinv_psd(const Matrix9d& m, double rtol) {
  const Eigen::SelfAdjointEigenSolver<Matrix9d> es(m);
  const auto& evals = es.eigenvalues();
  const double cutoff = rtol * evals.cwiseAbs().maxCoeff();
  Eigen::Matrix<double, 9, 1> inv;
  for (int i = 0; i < 9; ++i) inv[i] = (evals[i] > cutoff && evals[i] > 0.0) ? 1.0 / evals[i] : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

MatrixX9d solve_p1(const NormalEquations& ne) {
  if (ne.count == 0) return MatrixX9d::Zero(ne.xy.rows(), 9);
  return ne.xy * pinv_psd(ne.yy);
}

MatrixX9d solve_p1(std::span<const PatchPair> pairs) { return solve_p1(NormalEquations::from(pairs)); }

namespace {

NormalEquations from_columns(const Eigen::MatrixXd& lr, const Eigen::MatrixXd& hr) {
  if (lr.rows() != 9 || lr.cols() != hr.cols()) throw Error(Errc::dimension, "expected 9 x N and d x N samples");
  NormalEquations ne(hr.rows());
  ne.yy.noalias() = lr * lr.transpose();
  ne.xy.noalias() = hr * lr.transpose();
  ne.count = std::size_t(lr.cols());
  return ne;
}

}  // namespace

MatrixX9d solve_p1(const Eigen::MatrixXd& lr, const Eigen::MatrixXd& hr) { return solve_p1(from_columns(lr, hr)); }

MatrixX9d solve_p2(const NormalEquations& ne, double lambda) {
  if (!(lambda > 0.0)) throw Error(Errc::parameter, "solve_p2: lambda must be positive");
  const Matrix9d reg = ne.yy + lambda * Matrix9d::Identity();
  // P (YY^T + lambda I) = XY^T, solved on the transposed system.
  return reg.llt().solve(ne.xy.transpose()).transpose();
}

MatrixX9d solve_p2(std::span<const PatchPair> pairs, double lambda) {
  return solve_p2(NormalEquations::from(pairs), lambda);
}

MatrixX9d solve_p2(const Eigen::MatrixXd& lr, const Eigen::MatrixXd& hr, double lambda) {
  return solve_p2(from_columns(lr, hr), lambda);
}

Eigen::Matrix<double, 1, 9> solve_p3(const Eigen::MatrixXd& rows, const Eigen::VectorXd& targets) {
  if (rows.rows() == 0) return Eigen::Matrix<double, 1, 9>::Zero();
  if (rows.cols() != 9 || rows.rows() != targets.size())
    throw Error(Errc::dimension, "solve_p3: expected N x 9 patches and N targets");
  return solve_p1(from_columns(rows.transpose(), targets.transpose()));
}

const char* to_string(ProjectorKind k) {
  switch (k) {
    case ProjectorKind::p1: return "p1";
    case ProjectorKind::p2: return "p2";
    case ProjectorKind::p3: return "p3";
  }
  return "?";
}

ProjectorKind parse_projector(const std::string& name) {
  if (name == "p1" || name == "P1") return ProjectorKind::p1;
  if (name == "p2" || name == "P2") return ProjectorKind::p2;
  if (name == "p3" || name == "P3") return ProjectorKind::p3;
  throw Error(Errc::parameter, "unknown projector '" + name + "' (expected p1, p2 or p3)");
}

int projector_rows(ProjectorKind kind, int scale) { return kind == ProjectorKind::p3 ? 1 : 9 * scale * scale; }

ProjectionModel::ProjectionModel(ProjectorKind kind, int scale, LpeConfig cfg, double lambda, Provenance provenance)
    : kind_(kind),
      scale_(scale),
      cfg_(std::move(cfg)),
      lambda_(lambda),
      provenance_(provenance),
      rows_(projector_rows(kind, scale)),
      slot_(cfg_.class_count(), -1) {
  if (scale < 1) throw Error(Errc::parameter, "model scale must be >= 1");
  validate(cfg_);
}

Eigen::MatrixXf ProjectionModel::matrix(std::uint32_t label) const {
  const float* d = data(label);
  if (!d) return Eigen::MatrixXf::Zero(rows_, 9);
  return MatrixRef(d, rows_, 9);
}

void ProjectionModel::set_matrix(std::uint32_t label, const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() != rows_ || m.cols() != 9) throw Error(Errc::dimension, "set_matrix: wrong matrix shape");
  Eigen::Matrix<float, Eigen::Dynamic, 9, Eigen::RowMajor> f = m.cast<float>();
  set_matrix_f(label, f.data());
}

void ProjectionModel::set_matrix_f(std::uint32_t label, const float* values) {
  if (label >= slot_.size()) throw Error(Errc::parameter, "set_matrix: class label out of range");
  const std::size_t n = std::size_t(rows_) * 9;
  if (slot_[label] < 0) {
    slot_[label] = std::int32_t(storage_.size() / n);
    storage_.resize(storage_.size() + n);
  }
  std::copy(values, values + n, storage_.begin() + std::ptrdiff_t(slot_[label]) * std::ptrdiff_t(n));
}

bool ProjectionModel::operator==(const ProjectionModel& o) const {
  if (kind_ != o.kind_ || scale_ != o.scale_ || !(cfg_ == o.cfg_) || lambda_ != o.lambda_ ||
      !(provenance_ == o.provenance_) || rows_ != o.rows_ || slot_.size() != o.slot_.size())
    return false;
  const std::size_t n = std::size_t(rows_) * 9;
  for (std::uint32_t c = 0; c < slot_.size(); ++c) {
    const float* a = data(c);
    const float* b = o.data(c);
    if ((a == nullptr) != (b == nullptr)) return false;
    if (a && !std::equal(a, a + n, b)) return false;
  }
  return true;
}

}  // namespace lpesr
