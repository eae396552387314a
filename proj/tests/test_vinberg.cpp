#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "pconvex/vinberg.hpp"

using namespace pconvex;
using fixtures::vec;

TEST_CASE("orthant volumes") {
  const ConvexCone c2(fixtures::orthant(2)), c3(fixtures::orthant(3));
  CHECK(volume_functional(c2, vec({1, 1})).value == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(volume_functional(c3, vec({1, 2, 1})).value == doctest::Approx(1.0 / 12).epsilon(1e-13));
  CHECK(volume_functional(c3, vec({2, 4, 2})).value == doctest::Approx(1.0 / 96).epsilon(1e-13));
  CHECK_THROWS_AS(volume_functional(c3, vec({1, -1, 1})), Error);
}

TEST_CASE("gradient") {
  const ConvexCone c2(fixtures::orthant(2));
  CHECK((grad_volume(c2, vec({1, 1})) - vec({-0.5, -0.5})).norm() < 1e-13);
  const ConvexCone round(fixtures::round_cone(3));
  const Vec g = grad_volume(round, vec({0, 0, 2}));
  CHECK(std::abs(g[0]) < 1e-12);
  CHECK(std::abs(g[1]) < 1e-12);
}

TEST_CASE("quadrature agrees with the exact estimator") {
  const ConvexCone round(fixtures::round_cone(3));
  VinbergOptions q;
  q.estimator = Estimator::kQuadrature;
  q.samples = 40000;
  const Vec v = vec({0.1, -0.2, 1.5});
  const VolumeResult exact = volume_functional(round, v);
  const VolumeResult mc = volume_functional(round, v, q);
  CHECK(mc.estimator == Estimator::kQuadrature);
  CHECK(std::abs(mc.value - exact.value) < 4 * mc.error_bound + 1e-3 * exact.value);
  // Same seed, same answer.
  CHECK(volume_functional(round, v, q).value == mc.value);
}

TEST_CASE("slice centroids") {
  CHECK((slice_centroid(ConvexCone(fixtures::orthant(2)), vec({1, 1})) - vec({0.5, 0.5})).norm() < 1e-13);
  CHECK((slice_centroid(ConvexCone(fixtures::orthant(3)), vec({1, 1, 1})) - Vec::Constant(3, 1.0 / 3)).norm() < 1e-13);
  const Vec axial = slice_centroid(ConvexCone(fixtures::round_cone(3)), vec({0, 0, 1}));
  CHECK(axial.head(2).norm() < 1e-12);
}

TEST_CASE("fiber minimization") {
  const FiberMinimum fm = min_volume_on_fiber(ConvexCone(fixtures::orthant(2)), vec({1, 1}));
  CHECK((fm.functional - vec({0.5, 0.5})).norm() < 1e-9);
  CHECK(fm.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fm.centroid_residual < 1e-6);

  const FiberMinimum sym = min_volume_on_fiber(ConvexCone(fixtures::orthant(4)), Vec::Constant(4, 0.3));
  CHECK((sym.functional.normalized() - Vec::Constant(4, 0.5)).norm() < 1e-9);

  const FiberMinimum axis = min_volume_on_fiber(ConvexCone(fixtures::round_cone(3)), vec({0, 0, 1}));
  CHECK(axis.functional.head(2).norm() < 1e-9);
}

TEST_CASE("theta and its inverse") {
  const ConvexCone c2(fixtures::orthant(2));
  CHECK((theta(c2, vec({0.5, 0.5})).coords() - vec({1, 1}).normalized()).norm() < 1e-12);
  const Vec inv = theta_inverse(c2, ProjPoint(vec({1, 1})));
  CHECK(std::abs(inv[0] - inv[1]) < 1e-9);
  CHECK(volume_functional(c2, inv).value == doctest::Approx(1.0).epsilon(1e-9));

  const ConvexCone round(fixtures::round_cone(3));
  CHECK(theta(round, vec({0, 0, 1})).coords().head(2).norm() < 1e-12);
  CHECK(theta_inverse(round, ProjPoint(vec({0, 0, 1}))).head(2).norm() < 1e-9);
}

TEST_CASE("characteristic hypersurface of the orthant") {
  const ConvexCone c2(fixtures::orthant(2));
  const Vec p = characteristic_point(c2, vec({1, 1}).normalized());
  CHECK((p - Vec::Constant(2, std::sqrt(0.5))).norm() < 1e-9);
  for (int i = 1; i <= 50; ++i) {
    const double a = 0.5 * M_PI * i / 51;
    const Vec x = characteristic_point(c2, vec({std::cos(a), std::sin(a)}));
    CHECK(x[0] * x[1] == doctest::Approx(0.5).epsilon(1e-8));
  }
  // Invariance under diag(s, 1/s).
  const double s = 1.7;
  const Vec q = vec({0.3, 0.8}).normalized();
  const Vec image = characteristic_point(c2, vec({s * q[0], q[1] / s}).normalized());
  const Vec moved = characteristic_point(c2, q);
  CHECK((image - vec({s * moved[0], moved[1] / s})).norm() < 1e-8);
}

TEST_CASE("spherical centers") {
  CHECK((spherical_center(fixtures::round_cone(3)).center.coords() - Vec::Unit(3, 2)).norm() < 1e-9);
  const SphericalCenter o = spherical_center(fixtures::orthant(3));
  CHECK((o.center.coords() - Vec::Constant(3, 1 / std::sqrt(3.0))).norm() < 1e-8);
  const SphericalCenter q = spherical_center(fixtures::square());
  CHECK((q.rotation.matrix() * q.center.coords() - Vec::Unit(3, 2)).norm() < 1e-9);
}

TEST_CASE("rotation_between") {
  const Vec a = vec({1, 2, 3}).normalized(), b = vec({-1, 0, 2}).normalized();
  const Mat r = rotation_between(a, b);
  CHECK((r * a - b).norm() < 1e-12);
  CHECK((r.transpose() * r - Mat::Identity(3, 3)).norm() < 1e-12);
  CHECK(r.determinant() == doctest::Approx(1.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
  CHECK(unit_ball_volume(3) == doctest::Approx(4 * M_PI / 3));
}
