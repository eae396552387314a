#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "pconvex/domain.hpp"

namespace fixtures {

using pconvex::Chart;
using pconvex::ConvexDomain;
using pconvex::DualFunctional;
using pconvex::Mat;
using pconvex::Vec;

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline ConvexDomain unit_disk() { return ConvexDomain::ellipsoid(Chart::standard(3), Vec::Zero(2), Mat::Identity(2, 2)); }

inline ConvexDomain round_cone(int ambient) {
  return ConvexDomain::ellipsoid(Chart::standard(ambient), Vec::Zero(ambient - 1), Mat::Identity(ambient - 1, ambient - 1));
}

inline ConvexDomain square() {
  return ConvexDomain::vpoly(Chart::standard(3), {vec({-1, -1}), vec({1, -1}), vec({1, 1}), vec({-1, 1})});
}

// Coordinate simplex [e_1, ..., e_{n+1}] in the chart with pole (1, ..., 1).
inline ConvexDomain orthant(int ambient) {
  const Chart chart(DualFunctional(Vec::Ones(ambient)));
  std::vector<Vec> verts;
  for (int i = 0; i < ambient; ++i) verts.push_back(chart.to_chart(Vec::Unit(ambient, i)));
  return ConvexDomain::vpoly(chart, verts);
}

// Triangle (0,0), (1,0), (0,1) in the standard chart.
inline ConvexDomain unit_triangle() {
  return ConvexDomain::vpoly(Chart::standard(3), {vec({0, 0}), vec({1, 0}), vec({0, 1})});
}

// Boost preserving x^2 + y^2 - z^2 < 0 along the x axis, eigenvalues e^t, 1, e^-t.
inline Mat boost(double t) {
  Mat m = Mat::Identity(3, 3);
  m(0, 0) = m(2, 2) = std::cosh(t);
  m(0, 2) = m(2, 0) = std::sinh(t);
  return m;
}

inline Mat rotation_z(double a) {
  Mat m = Mat::Identity(3, 3);
  m(0, 0) = m(1, 1) = std::cos(a);
  m(0, 1) = -std::sin(a);
  m(1, 0) = std::sin(a);
  return m;
}

// Haar-ish random orthogonal matrix with det 1.
inline Mat random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// Uniform point in the unit disk scaled by r.
inline Vec disk_point(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rho = r * std::sqrt(u(rng)), th = 2 * M_PI * u(rng);
  return vec({rho * std::cos(th), rho * std::sin(th)});
}

// Random point in a domain by rejection from its bounding box around the
// interior point.
inline Vec random_inside(const ConvexDomain& d, std::mt19937_64& rng, double shrink = 0.98) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Vec c = d.interior_point();
  double reach = 0.0;
  for (int i = 0; i < d.dim(); ++i) {
    const auto [lo, hi] = d.line_interval(c, Vec::Unit(d.dim(), i));
    reach = std::max({reach, -lo, hi});
  }
  for (;;) {
    Vec z = c;
    for (int i = 0; i < d.dim(); ++i) z[i] += reach * u(rng);
    if (d.contains(z).location == pconvex::Location::kInside) {
      return c + shrink * (z - c);
    }
  }
}

}  // namespace fixtures
