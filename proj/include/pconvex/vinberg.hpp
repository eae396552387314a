#pragma once

// Vinberg's volume functional V(v) = vol{ w in C : <v, w> <= 1 } on the
// dual cone, its derivatives, slice centroids, the fiber minimization behind
// the Theta map and the characteristic hypersurface, and spherical centers.
//
// Functionals are passed as raw coefficient vectors v: V is homogeneous of
// degree -(n+1), so the scale matters.

#include <cstdint>
#include <vector>

#include "pconvex/domain.hpp"

namespace pconvex {

enum class Estimator { kAuto, kExact, kQuadrature };

std::string_view estimator_name(Estimator e);

struct VinbergOptions {
  Estimator estimator = Estimator::kAuto;
  int samples = 20000;  // quadrature sample budget
  std::uint64_t seed = 1;
  int max_iterations = 100;
};

struct VolumeResult {
  double value = 0.0;
  Estimator estimator = Estimator::kExact;
  double error_bound = 0.0;  // one standard error for quadrature
};

// Evaluates V and its derivatives for one cone. Polytope and radial-graph
// cones are decomposed into simplicial cones (closed forms); ellipsoid cones
// use the closed form through the quadric. The quadrature estimator is a
// fixed-seed stratified Monte Carlo over the chart measure; with the sample
// set frozen it is itself a smooth convex function of v.
class VolumeModel {
 public:
  explicit VolumeModel(const ConvexCone& cone, const VinbergOptions& options = {});

  struct Evaluation {
    double value = 0.0;
    Vec gradient;
    Mat hessian;  // empty unless requested
    double error_bound = 0.0;
  };

  Estimator estimator() const { return estimator_; }
  const ConvexCone& cone() const { return cone_; }
  int ambient_dim() const { return cone_.ambient_dim(); }

  // Throws kOutsideDualCone when v is not positive on cl C minus 0.
  Evaluation evaluate(const Vec& v, bool with_hessian = false) const;
  // Centroid of the slice C ∩ {<v, .> = 1}.
  Vec centroid(const Vec& v) const;
  bool in_dual(const Vec& v) const;

 private:
  void check_dual(const Vec& v) const;

  ConvexCone cone_;
  Estimator estimator_ = Estimator::kExact;
  // Simplicial cones: columns are the extreme rays; weight |det| / (n+1)!.
  std::vector<Mat> rays_;
  std::vector<double> weights_;
  // Ellipsoid: P = M^{-1} and kappa = omega_n / (n+1) |det M|^{-1/2}.
  Mat quad_inv_;
  double kappa_ = 0.0;
  // Quadrature: rays w_k = h + F z_k with chart-measure weights c_k and
  // stratum labels for the error estimate.
  Mat sample_rays_;
  Vec sample_weights_;
  std::vector<int> sample_stratum_;
  std::vector<int> stratum_count_;
};

VolumeResult volume_functional(const ConvexCone& cone, const Vec& v, const VinbergOptions& options = {});
Vec grad_volume(const ConvexCone& cone, const Vec& v, const VinbergOptions& options = {});
Vec slice_centroid(const ConvexCone& cone, const Vec& v, const VinbergOptions& options = {});

struct FiberMinimum {
  Vec functional;  // raw v* with <v*, q> = 1
  double value = 0.0;  // m = V(v*)
  double centroid_residual = 0.0;  // |mu(v*) - q| / |q|
  int iterations = 0;
};

// Minimizes V over { v : <v, q> = 1 } by damped Newton on log V.
FiberMinimum min_volume_on_fiber(const VolumeModel& model, const Vec& q);
FiberMinimum min_volume_on_fiber(const ConvexCone& cone, const Vec& q, const VinbergOptions& options = {});

ProjPoint theta(const VolumeModel& model, const Vec& v);
ProjPoint theta(const ConvexCone& cone, const Vec& v, const VinbergOptions& options = {});

// Raw functional v* with V(v*) = 1 and theta(v*) = p.
Vec theta_inverse(const VolumeModel& model, const ProjPoint& p);
Vec theta_inverse(const ConvexCone& cone, const ProjPoint& p, const VinbergOptions& options = {});

// m^{-1/(n+1)} q for the unit vector q (the point of S on the ray).
Vec characteristic_point(const VolumeModel& model, const Vec& q);
Vec characteristic_point(const ConvexCone& cone, const Vec& q, const VinbergOptions& options = {});

struct SphericalCenter {
  ProjPoint center;
  ProjTransform rotation;  // orthogonal, carries center to the chart pole
  double gradient_norm = 0.0;
  int iterations = 0;
};

SphericalCenter spherical_center(const ConvexDomain& domain, const VinbergOptions& options = {});

// Orthogonal matrix (det 1) rotating unit vector a onto unit vector b in the
// plane they span.
Mat rotation_between(const Vec& a, const Vec& b);

// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace pconvex
