#include "pconvex/projgeom.hpp"

#include <cmath>
#include <string>

namespace pconvex {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kInvalidFormat: return "invalid-format";
    case ErrorCode::kAtInfinity: return "at-infinity";
    case ErrorCode::kDegeneratePencil: return "degenerate-pencil";
    case ErrorCode::kSingularMatrix: return "singular-matrix";
    case ErrorCode::kNotProperlyConvex: return "not-properly-convex";
    case ErrorCode::kDegenerateChord: return "degenerate-chord";
    case ErrorCode::kNotOnFrontier: return "not-on-frontier";
    case ErrorCode::kInfiniteDistance: return "infinite-distance";
    case ErrorCode::kProjectionUndefined: return "projection-undefined";
    case ErrorCode::kOutsideDualCone: return "outside-dual-cone";
    case ErrorCode::kConvergenceFailure: return "convergence-failure";
    case ErrorCode::kDegenerateDomain: return "degenerate-domain";
    case ErrorCode::kNotHyperbolic: return "not-hyperbolic";
    case ErrorCode::kAutomorphismInconsistency: return "automorphism-inconsistency";
    case ErrorCode::kInvalidBasepoint: return "invalid-basepoint";
    case ErrorCode::kTransversalityFailure: return "transversality-failure";
    case ErrorCode::kCoplanarity: return "coplanarity";
    case ErrorCode::kNotCertified: return "not-certified";
    case ErrorCode::kApproximationFailure: return "approximation-failure";
  }
  return "unknown";
}

ProjPoint::ProjPoint(const Vec& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kInvalidInput, "projective point from zero or non-finite vector");
  }
  coords_ = v / norm;
}

ProjPoint ProjPoint::antipode() const { return ProjPoint(-coords_); }

DualFunctional::DualFunctional(const Vec& coeffs) {
  const double norm = coeffs.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kInvalidInput, "dual functional from zero or non-finite vector");
  }
  coeffs_ = coeffs / norm;
}

ProjTransform::ProjTransform(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kInvalidInput, "projective transform must be a nonempty square matrix");
  }
  const double det = m.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-300) {
    throw Error(ErrorCode::kSingularMatrix, "projective transform is singular");
  }
  matrix_ = m / std::pow(std::abs(det), 1.0 / static_cast<double>(m.rows()));
}

ProjTransform ProjTransform::identity(int ambient_dim) {
  return ProjTransform(Mat::Identity(ambient_dim, ambient_dim));
}

ProjTransform ProjTransform::inverse() const { return ProjTransform(matrix_.inverse()); }

ProjTransform ProjTransform::operator*(const ProjTransform& other) const {
  return ProjTransform(matrix_ * other.matrix_);
}

ProjPoint normalize_point(const Vec& v, const std::optional<Vec>& side) {
  ProjPoint p(v);
  if (side) {
    if (side->dot(p.coords()) < 0.0) return p.antipode();
    return p;
  }
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
    if (p[i] != 0.0) return p[i] < 0.0 ? p.antipode() : p;
  }
  return p;
}

bool same_projective_point(const ProjPoint& p, const ProjPoint& q, double tol) {
  return std::min((p.coords() - q.coords()).norm(), (p.coords() + q.coords()).norm()) <= tol;
}

ProjPoint apply(const ProjTransform& a, const ProjPoint& p) {
  return ProjPoint(a.matrix() * p.coords());
}

DualFunctional dual_apply(const ProjTransform& a, const DualFunctional& phi) {
  Eigen::FullPivLU<Mat> lu(a.matrix());
  if (!lu.isInvertible()) throw Error(ErrorCode::kSingularMatrix, "dual action of singular matrix");
  return DualFunctional(lu.inverse().transpose() * phi.coeffs());
}

Mat null_space(const Mat& m, double tol) {
  const int cols = static_cast<int>(m.cols());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = sv.size() > 0 ? std::max(sv[0], 1.0) : 1.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol * scale) ++rank;
  }
  Mat basis = svd.matrixV().rightCols(cols - rank);
  // Deterministic sign: first component of largest magnitude positive.
  for (int c = 0; c < basis.cols(); ++c) {
    Eigen::Index arg = 0;
    basis.col(c).cwiseAbs().maxCoeff(&arg);
    if (basis(arg, c) < 0.0) basis.col(c) *= -1.0;
  }
  return basis;
}

ProjSubspace pencil_core(const DualFunctional& h1, const DualFunctional& h2) {
  if (h1.ambient_dim() != h2.ambient_dim()) {
    throw Error(ErrorCode::kInvalidInput, "pencil functionals of different dimension");
  }
  const int dim = h1.ambient_dim();
  Mat rows(2, dim);
  rows.row(0) = h1.coeffs().transpose();
  rows.row(1) = h2.coeffs().transpose();
  Eigen::JacobiSVD<Mat> svd(rows);
  if (svd.singularValues()[1] <= kExactTol) {
    throw Error(ErrorCode::kDegeneratePencil, "pencil of proportional hyperplanes has no core");
  }
  ProjSubspace core;
  core.basis = null_space(rows);
  core.codim = 2;
  return core;
}

Chart::Chart(const DualFunctional& at_infinity) : h_(at_infinity) {
  const int ambient = h_.ambient_dim();
  if (ambient < 2) throw Error(ErrorCode::kInvalidInput, "chart needs ambient dimension >= 2");
  frame_.resize(ambient, ambient - 1);
  int filled = 0;
  const Vec& h = h_.coeffs();
  for (int i = 0; i < ambient && filled < ambient - 1; ++i) {
    Vec e = Vec::Unit(ambient, i);
    e -= h.dot(e) * h;
    for (int j = 0; j < filled; ++j) e -= frame_.col(j).dot(e) * frame_.col(j);
    // Re-orthogonalize once for stability.
    e -= h.dot(e) * h;
    for (int j = 0; j < filled; ++j) e -= frame_.col(j).dot(e) * frame_.col(j);
    const double norm = e.norm();
    if (norm < 1e-6) continue;
    frame_.col(filled++) = e / norm;
  }
  if (filled != ambient - 1) throw Error(ErrorCode::kInvalidInput, "could not build chart frame");
}

Chart Chart::standard(int ambient_dim) {
  return Chart(DualFunctional(Vec::Unit(ambient_dim, ambient_dim - 1)));
}

Vec Chart::to_chart(const Vec& w, double tol) const {
  const double s = h_.coeffs().dot(w);
  if (std::abs(s) <= tol * w.norm()) {
    throw Error(ErrorCode::kAtInfinity, "point lies on the chart's hyperplane at infinity");
  }
  return frame_.transpose() * w / s;
}

Mat Chart::basis() const {
  Mat b(ambient_dim(), ambient_dim());
  b.leftCols(dim()) = frame_;
  b.col(dim()) = h_.coeffs();
  return b;
}

Mat Chart::to_chart_basis(const Mat& a) const {
  const Mat b = basis();
  return b.transpose() * a * b;
}

Mat Chart::from_chart_basis(const Mat& a) const {
  const Mat b = basis();
  return b * a * b.transpose();
}

Vec affine_chart(const DualFunctional& h, const ProjPoint& p) { return Chart(h).to_chart(p); }

}  // namespace pconvex
