#include "pconvex/vinberg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pconvex {

std::string_view estimator_name(Estimator e) {
  switch (e) {
    case Estimator::kAuto: return "auto";
    case Estimator::kExact: return "exact";
    case Estimator::kQuadrature: return "quadrature";
  }
  return "unknown";
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Portable uniform and normal variates (no reliance on distribution
// implementations, so sample sets are identical across standard libraries).
class Variates {
 public:
  explicit Variates(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53; }
  double normal() {
    const double a = uniform(), b = uniform();
    return std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * std::numbers::pi * b);
  }
  double exponential() { return -std::log(uniform()); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

VolumeModel::VolumeModel(const ConvexCone& cone, const VinbergOptions& options)
    : cone_(cone), estimator_(options.estimator == Estimator::kAuto ? Estimator::kExact : options.estimator) {
  const ConvexDomain& domain = cone_.domain();
  const Chart& chart = domain.chart();
  const int n = domain.dim();
  if (estimator_ == Estimator::kExact) {
    if (domain.kind() == BackendKind::kEllipsoid) {
      const Mat m = domain.quadric();
      Eigen::FullPivLU<Mat> lu(m);
      quad_inv_ = lu.inverse();
      quad_inv_ = 0.5 * (quad_inv_ + quad_inv_.transpose());
      kappa_ = unit_ball_volume(n) / (n + 1) / std::sqrt(std::abs(lu.determinant()));
    } else {
      const double fact = factorial(n + 1);
      for (const auto& s : domain.triangulation()) {
        Mat w(n + 1, n + 1);
        for (int i = 0; i <= n; ++i) w.col(i) = chart.ray(s.col(i));
        const double weight = std::abs(w.determinant()) / fact;
        if (weight <= 0.0) continue;
        rays_.push_back(std::move(w));
        weights_.push_back(weight);
      }
    }
    return;
  }
  // Stratified Monte Carlo over the chart measure.
  if (options.samples < 1) throw Error(ErrorCode::kInvalidInput, "quadrature needs a positive sample count");
  Variates rng(options.seed);
  std::vector<Vec> points;
  std::vector<double> weights;
  if (domain.kind() == BackendKind::kEllipsoid) {
    const EllipsoidData& e = domain.ellipsoid_data();
    const Mat root = Eigen::LLT<Mat>(e.shape).matrixL();
    const double volume = unit_ball_volume(n) * root.diagonal().prod();
    for (int k = 0; k < options.samples; ++k) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.normal();
      x *= std::pow(rng.uniform(), 1.0 / n) / x.norm();
      points.push_back(e.center + root * x);
      weights.push_back(volume / options.samples);
      sample_stratum_.push_back(0);
    }
    stratum_count_.push_back(options.samples);
  } else {
    const auto& simplices = domain.triangulation();
    std::vector<double> vols;
    double total = 0.0;
    for (const auto& s : simplices) {
      vols.push_back(simplex_volume(s));
      total += vols.back();
    }
    for (size_t j = 0; j < simplices.size(); ++j) {
      const int count = std::max(4, static_cast<int>(std::lround(options.samples * vols[j] / total)));
      stratum_count_.push_back(count);
      for (int k = 0; k < count; ++k) {
        Vec bary(n + 1);
        for (int i = 0; i <= n; ++i) bary[i] = rng.exponential();
        bary /= bary.sum();
        points.push_back(simplices[j] * bary);
        weights.push_back(vols[j] / count);
        sample_stratum_.push_back(static_cast<int>(j));
      }
    }
  }
  sample_rays_.resize(n + 1, static_cast<int>(points.size()));
  sample_weights_.resize(static_cast<int>(points.size()));
  for (size_t k = 0; k < points.size(); ++k) {
    sample_rays_.col(static_cast<int>(k)) = chart.ray(points[k]);
    sample_weights_[static_cast<int>(k)] = weights[k];
  }
}

bool VolumeModel::in_dual(const Vec& v) const {
  return v.allFinite() && cone_.dual_margin(v) > 1e-14 * v.norm();
}

void VolumeModel::check_dual(const Vec& v) const {
  if (v.size() != ambient_dim()) throw Error(ErrorCode::kInvalidInput, "functional dimension mismatch");
  if (!in_dual(v)) {
    throw Error(ErrorCode::kOutsideDualCone,
                "functional is not positive on the closed cone (margin " + std::to_string(cone_.dual_margin(v)) + ")");
  }
}

VolumeModel::Evaluation VolumeModel::evaluate(const Vec& v, bool with_hessian) const {
  check_dual(v);
  const int n1 = ambient_dim();
  const int n = n1 - 1;
  Evaluation e;
  e.gradient = Vec::Zero(n1);
  if (with_hessian) e.hessian = Mat::Zero(n1, n1);
  if (estimator_ == Estimator::kExact && cone_.domain().kind() == BackendKind::kEllipsoid) {
    const Vec pv = quad_inv_ * v;
    const double s = -v.dot(pv);
    e.value = kappa_ * std::pow(s, -0.5 * (n + 1));
    e.gradient = kappa_ * (n + 1) * std::pow(s, -0.5 * (n + 3)) * pv;
    if (with_hessian) {
      e.hessian = kappa_ * (n + 1) *
                  (std::pow(s, -0.5 * (n + 3)) * quad_inv_ + (n + 3) * std::pow(s, -0.5 * (n + 5)) * pv * pv.transpose());
    }
    return e;
  }
  if (estimator_ == Estimator::kExact) {
    for (size_t j = 0; j < rays_.size(); ++j) {
      const Mat& w = rays_[j];
      const Vec a = w.transpose() * v;
      const Mat g = w * a.cwiseInverse().asDiagonal();
      const double vs = weights_[j] / a.prod();
      const Vec gsum = g.rowwise().sum();
      e.value += vs;
      e.gradient -= vs * gsum;
      if (with_hessian) e.hessian += vs * (gsum * gsum.transpose() + g * g.transpose());
    }
    return e;
  }
  // Quadrature.
  const Vec a = sample_rays_.transpose() * v;
  std::vector<double> sum(stratum_count_.size(), 0.0), sum2(stratum_count_.size(), 0.0);
  for (int k = 0; k < a.size(); ++k) {
    const double c = sample_weights_[k];
    const double p = std::pow(a[k], -(n + 1));
    const double f = c * p / (n + 1);
    e.value += f;
    sum[sample_stratum_[k]] += f;
    sum2[sample_stratum_[k]] += f * f;
    e.gradient -= (c * p / a[k]) * sample_rays_.col(k);
    if (with_hessian) {
      e.hessian += ((n + 2) * c * p / (a[k] * a[k])) * sample_rays_.col(k) * sample_rays_.col(k).transpose();
    }
  }
  double var = 0.0;
  for (size_t s = 0; s < sum.size(); ++s) {
    const double cnt = stratum_count_[s];
    // Each f already carries the factor vol/cnt; the stratum estimate is
    // the sum, whose variance is cnt * var(f).
    const double mean = sum[s] / cnt;
    const double v_f = std::max(0.0, sum2[s] / cnt - mean * mean) * cnt / std::max(1.0, cnt - 1.0);
    var += cnt * v_f;
  }
  e.error_bound = std::sqrt(var);
  return e;
}

Vec VolumeModel::centroid(const Vec& v) const {
  check_dual(v);
  const int n1 = ambient_dim();
  if (estimator_ == Estimator::kExact && cone_.domain().kind() == BackendKind::kEllipsoid) {
    const Vec pv = quad_inv_ * v;
    return pv / v.dot(pv);
  }
  if (estimator_ == Estimator::kExact) {
    Vec acc = Vec::Zero(n1);
    double total = 0.0;
    for (size_t j = 0; j < rays_.size(); ++j) {
      const Vec a = rays_[j].transpose() * v;
      const double vs = weights_[j] / a.prod();
      acc += vs * (rays_[j] * a.cwiseInverse()) / static_cast<double>(n1);
      total += vs;
    }
    return acc / total;
  }
  const Evaluation e = evaluate(v);
  return -e.gradient / (n1 * e.value);
}

VolumeResult volume_functional(const ConvexCone& cone, const Vec& v, const VinbergOptions& options) {
  const VolumeModel model(cone, options);
  const auto e = model.evaluate(v);
  return {e.value, model.estimator(), e.error_bound};
}

Vec grad_volume(const ConvexCone& cone, const Vec& v, const VinbergOptions& options) {
  return VolumeModel(cone, options).evaluate(v).gradient;
}

Vec slice_centroid(const ConvexCone& cone, const Vec& v, const VinbergOptions& options) {
  return VolumeModel(cone, options).centroid(v);
}

FiberMinimum min_volume_on_fiber(const VolumeModel& model, const Vec& q) {
  const ConvexCone& cone = model.cone();
  if (q.size() != model.ambient_dim()) throw Error(ErrorCode::kInvalidInput, "point dimension mismatch");
  if (!cone.contains(q)) throw Error(ErrorCode::kInvalidInput, "fiber point is not inside the open cone");
  const Vec& h = cone.domain().chart().pole();
  const Vec v0 = h / h.dot(q);
  Mat qt(1, q.size());
  qt.row(0) = q.transpose();
  const Mat u = null_space(qt, 0.0);
  Vec s = Vec::Zero(u.cols());
  FiberMinimum out;
  auto log_value = [&](const Vec& v) { return std::log(model.evaluate(v).value); };
  const int max_iterations = 200;
  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    const Vec v = v0 + u * s;
    const auto e = model.evaluate(v, true);
    const Vec g = e.gradient / e.value;
    const Mat hess = e.hessian / e.value - g * g.transpose();
    const Vec gr = u.transpose() * g;
    const Mat hr = u.transpose() * hess * u;
    Eigen::LDLT<Mat> ldlt(hr);
    Vec step;
    if (ldlt.info() == Eigen::Success && ldlt.isPositive() && ldlt.vectorD().minCoeff() > 0.0) {
      step = -ldlt.solve(gr);
    } else {
      step = -gr;
    }
    const double decrement = -gr.dot(step);
    if (!(decrement > 1e-28)) break;
    const double f0 = std::log(e.value);
    double t = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt, t *= 0.5) {
      const Vec trial = v + t * (u * step);
      if (!model.in_dual(trial)) continue;
      if (log_value(trial) <= f0 - 0.25 * t * decrement + 1e-15 * std::abs(f0)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    s += t * step;
    if (decrement < 1e-24 && t == 1.0) {
      ++out.iterations;
      break;
    }
  }
  out.functional = v0 + u * s;
  out.value = model.evaluate(out.functional).value;
  const Vec mu = model.centroid(out.functional);
  out.centroid_residual = (mu - q).norm() / q.norm();
  if (!(out.centroid_residual < 1e-6)) {
    throw Error(ErrorCode::kConvergenceFailure,
                "fiber minimization did not converge (centroid residual " + std::to_string(out.centroid_residual) + ")");
  }
  return out;
}

FiberMinimum min_volume_on_fiber(const ConvexCone& cone, const Vec& q, const VinbergOptions& options) {
  return min_volume_on_fiber(VolumeModel(cone, options), q);
}

ProjPoint theta(const VolumeModel& model, const Vec& v) { return ProjPoint(model.centroid(v)); }

ProjPoint theta(const ConvexCone& cone, const Vec& v, const VinbergOptions& options) {
  return theta(VolumeModel(cone, options), v);
}

Vec theta_inverse(const VolumeModel& model, const ProjPoint& p) {
  const Vec& h = model.cone().domain().chart().pole();
  const Vec q = h.dot(p.coords()) < 0.0 ? Vec(-p.coords()) : p.coords();
  const FiberMinimum fm = min_volume_on_fiber(model, q);
  return fm.functional * std::pow(fm.value, 1.0 / model.ambient_dim());
}

Vec theta_inverse(const ConvexCone& cone, const ProjPoint& p, const VinbergOptions& options) {
  return theta_inverse(VolumeModel(cone, options), p);
}

Vec characteristic_point(const VolumeModel& model, const Vec& q) {
  const Vec unit = q.normalized();
  const FiberMinimum fm = min_volume_on_fiber(model, unit);
  return std::pow(fm.value, -1.0 / model.ambient_dim()) * unit;
}

Vec characteristic_point(const ConvexCone& cone, const Vec& q, const VinbergOptions& options) {
  return characteristic_point(VolumeModel(cone, options), q);
}

Mat rotation_between(const Vec& a, const Vec& b) {
  const int dim = static_cast<int>(a.size());
  const Vec u = a.normalized();
  const Vec target = b.normalized();
  const double c = std::clamp(u.dot(target), -1.0, 1.0);
  Vec w = target - c * u;
  double s = w.norm();
  if (s <= 1e-15) {
    if (c > 0.0) return Mat::Identity(dim, dim);
    // Half turn in a plane containing u.
    Mat ut(1, dim);
    ut.row(0) = u.transpose();
    w = null_space(ut, 0.0).col(0);
    s = 0.0;
  } else {
    w /= s;
  }
  return Mat::Identity(dim, dim) + (c - 1.0) * (u * u.transpose() + w * w.transpose()) +
         s * (w * u.transpose() - u * w.transpose());
}

SphericalCenter spherical_center(const ConvexDomain& domain, const VinbergOptions& options) {
  const ConvexCone cone(domain);
  const VolumeModel model(cone, options);
  const int n1 = domain.ambient_dim();
  const Vec& pole = domain.chart().pole();
  // F(q) = log m(q/|q|) and its gradient (n+1)(v*(q) - q/|q|^2).
  auto objective = [&](const Vec& q, Vec* grad) {
    const FiberMinimum fm = min_volume_on_fiber(model, q);
    if (grad) *grad = n1 * (fm.functional - q / q.squaredNorm());
    return std::log(fm.value) - n1 * std::log(q.norm());
  };
  Vec q = domain.chart().ray(domain.interior_point()).normalized();
  SphericalCenter result;
  Vec grad;
  double f = objective(q, &grad);
  double gnorm = 0.0;
  for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
    Mat qt(1, n1);
    qt.row(0) = q.transpose();
    const Mat e = null_space(qt, 0.0);
    const Vec gs = e.transpose() * grad;
    gnorm = gs.norm();
    if (gnorm < 1e-11) break;
    // Finite-difference Hessian of the tangent gradient.
    const int n = n1 - 1;
    const double delta = 1e-4;
    Mat hess(n, n);
    bool hess_ok = true;
    for (int j = 0; j < n && hess_ok; ++j) {
      Vec gp, gm;
      const Vec qp = q + delta * e.col(j), qm = q - delta * e.col(j);
      if (!cone.contains(qp) || !cone.contains(qm)) {
        hess_ok = false;
        break;
      }
      objective(qp, &gp);
      objective(qm, &gm);
      hess.col(j) = e.transpose() * (gp - gm) / (2.0 * delta);
    }
    Vec step;
    if (hess_ok) {
      hess = 0.5 * (hess + hess.transpose());
      Eigen::SelfAdjointEigenSolver<Mat> eig(hess);
      if (eig.eigenvalues().maxCoeff() < 0.0) step = -eig.eigenvectors() *
                                                     eig.eigenvalues().cwiseInverse().asDiagonal() *
                                                     eig.eigenvectors().transpose() * gs;
    }
    if (step.size() == 0) step = gs;
    if (step.norm() > 0.5) step *= 0.5 / step.norm();
    bool accepted = false;
    double t = 1.0;
    for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
      const Vec trial = (q + t * (e * step)).normalized();
      if (!cone.contains(trial)) continue;
      Vec g_trial;
      double f_trial;
      try {
        f_trial = objective(trial, &g_trial);
      } catch (const Error&) {
        continue;
      }
      if (f_trial >= f - 1e-15 * std::max(1.0, std::abs(f))) {
        q = trial;
        f = f_trial;
        grad = g_trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  {
    Mat qt(1, n1);
    qt.row(0) = q.transpose();
    gnorm = (null_space(qt, 0.0).transpose() * grad).norm();
  }
  result.gradient_norm = gnorm;
  if (!(gnorm < 1e-8)) {
    throw Error(ErrorCode::kConvergenceFailure, "spherical center search stalled (gradient " + std::to_string(gnorm) +
                                                    ")",
                "{\"best_iterate\":[" + [&] {
                  std::string s;
                  for (int i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
                  return s;
                }() + "]}");
  }
  result.center = ProjPoint(q);
  result.rotation = ProjTransform(rotation_between(q, pole));
  return result;
}

}  // namespace pconvex
