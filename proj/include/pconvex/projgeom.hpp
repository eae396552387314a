#pragma once

// Projective-linear primitives: points of positive projective space stored
// on the unit sphere, dual functionals, unimodular transforms, subspaces and
// affine charts.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "pconvex/error.hpp"
#include "pconvex/tolerances.hpp"

namespace pconvex {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A point of S^n = positive projective space. The representative has unit
// Euclidean norm; its sign is meaningful (two-fold cover of RP^n).
class ProjPoint {
 public:
  ProjPoint() = default;
  // Rescales v to unit length, keeping its sign. Throws on the zero vector.
  explicit ProjPoint(const Vec& v);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }

  ProjPoint antipode() const;

 private:
  Vec coords_;
};

// A functional phi(x) = <coeffs, x> up to positive scale; coeffs are unit.
class DualFunctional {
 public:
  DualFunctional() = default;
  explicit DualFunctional(const Vec& coeffs);

  const Vec& coeffs() const { return coeffs_; }
  int ambient_dim() const { return static_cast<int>(coeffs_.size()); }
  double pair(const Vec& x) const { return coeffs_.dot(x); }
  double pair(const ProjPoint& p) const { return coeffs_.dot(p.coords()); }

 private:
  Vec coeffs_;
};

// An (n+1)x(n+1) matrix rescaled at construction to |det| = 1.
class ProjTransform {
 public:
  ProjTransform() = default;
  explicit ProjTransform(const Mat& m);

  static ProjTransform identity(int ambient_dim);

  const Mat& matrix() const { return matrix_; }
  int ambient_dim() const { return static_cast<int>(matrix_.rows()); }
  ProjTransform inverse() const;
  ProjTransform operator*(const ProjTransform& other) const;

 private:
  Mat matrix_;
};

// Linear subspace of R^{n+1} given by an orthonormal basis (columns).
struct ProjSubspace {
  Mat basis;
  int codim = 0;

  int dim() const { return static_cast<int>(basis.cols()); }
  // Orthogonal projector onto the subspace.
  Mat projector() const { return basis * basis.transpose(); }
};

// v/|v| with the sign chosen so that <side, result> > 0 when a side is given,
// otherwise so that the last nonzero coordinate is positive.
ProjPoint normalize_point(const Vec& v, const std::optional<Vec>& side = std::nullopt);

// True when p and q agree up to sign within tol.
bool same_projective_point(const ProjPoint& p, const ProjPoint& q, double tol = kExactTol);

ProjPoint apply(const ProjTransform& a, const ProjPoint& p);
DualFunctional dual_apply(const ProjTransform& a, const DualFunctional& phi);

// ker H1 ∩ ker H2; throws kDegeneratePencil for proportional functionals.
ProjSubspace pencil_core(const DualFunctional& h1, const DualFunctional& h2);

// Orthonormal basis of the null space of the rows of m (columns of result).
Mat null_space(const Mat& m, double tol = kExactTol);

// Affine patch complementary to ker(h). The orthonormal frame of ker(h) is
// fixed when the chart is built: Gram-Schmidt over e_1..e_{n+1} projected
// onto h^perp, so the standard chart h = e_{n+1} has frame e_1..e_n.
class Chart {
 public:
  Chart() = default;
  explicit Chart(const DualFunctional& at_infinity);
  static Chart standard(int ambient_dim);

  const DualFunctional& at_infinity() const { return h_; }
  const Vec& pole() const { return h_.coeffs(); }
  const Mat& frame() const { return frame_; }
  int dim() const { return static_cast<int>(frame_.cols()); }
  int ambient_dim() const { return dim() + 1; }

  // Chart coordinates of a homogeneous vector. Throws kAtInfinity when the
  // vector lies (within tol) on the hyperplane at infinity.
  Vec to_chart(const Vec& w, double tol = kExactTol) const;
  Vec to_chart(const ProjPoint& p, double tol = kExactTol) const {
    return to_chart(p.coords(), tol);
  }
  // Homogeneous representative h + F z (so <h, w> = 1).
  Vec ray(const Vec& z) const { return h_.coeffs() + frame_ * z; }
  ProjPoint from_chart(const Vec& z) const { return ProjPoint(ray(z)); }

  // Orthogonal matrix [F | h]: chart-basis coordinates of w are B^T w, and a
  // point with chart coordinates z has chart-basis coordinates (z, 1).
  Mat basis() const;
  // Matrix of a linear map expressed in the chart basis.
  Mat to_chart_basis(const Mat& a) const;
  Mat from_chart_basis(const Mat& a) const;

 private:
  DualFunctional h_;
  Mat frame_;
};

// Chart coordinates of p in the chart at infinity h (convenience wrapper).
Vec affine_chart(const DualFunctional& h, const ProjPoint& p);

}  // namespace pconvex
