#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "pconvex/hilbert.hpp"

using namespace pconvex;
using fixtures::vec;

TEST_CASE("distance closed forms") {
  const ConvexDomain disk = fixtures::unit_disk();
  CHECK(distance(disk, vec({0, 0}), vec({0.5, 0})) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-13));
  CHECK(distance(disk, vec({0.2, 0.1}), vec({0.2, 0.1})) == 0.0);

  const ConvexDomain tri = fixtures::orthant(3);
  const ProjPoint x(vec({1, 1, 1})), y(vec({2, 1, 1}));
  CHECK(distance(tri, x, y) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("distance to the frontier is infinite") {
  CHECK_THROWS_AS(distance(fixtures::unit_disk(), vec({0, 0}), vec({1, 0})), Error);
}

TEST_CASE("distance is projectively invariant") {
  const ConvexDomain disk = fixtures::unit_disk();
  const ProjTransform b(fixtures::boost(0.9));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const ProjPoint x = disk.lift(fixtures::disk_point(rng, 0.9));
    const ProjPoint y = disk.lift(fixtures::disk_point(rng, 0.9));
    CHECK(distance(disk, apply(b, x), apply(b, y)) == doctest::Approx(distance(disk, x, y)).epsilon(1e-9));
  }
}

TEST_CASE("geodesics") {
  const ConvexDomain disk = fixtures::unit_disk();
  const auto mid = geodesic(disk, vec({-0.5, 0}), vec({0.5, 0}), 2);
  REQUIRE(mid.size() == 3);
  CHECK(mid[1].norm() < 1e-10);

  const auto pts = geodesic(disk, vec({0, 0}), vec({0.9, 0}), 3);
  const double step = distance(disk, pts[0], pts[1]);
  for (int i = 1; i < 3; ++i) CHECK(distance(disk, pts[i], pts[i + 1]) == doctest::Approx(step).epsilon(1e-9));
  // Equal Hilbert steps shrink in the Euclidean sense toward the frontier.
  CHECK((pts[1] - pts[0]).norm() > (pts[2] - pts[1]).norm());
  CHECK((pts[2] - pts[1]).norm() > (pts[3] - pts[2]).norm());

  std::mt19937_64 rng(2);
  const ConvexDomain sq = fixtures::square();
  for (int trial = 0; trial < 20; ++trial) {
    const Vec a = fixtures::random_inside(sq, rng), b = fixtures::random_inside(sq, rng);
    const auto g = geodesic(sq, a, b, 5);
    const double total = distance(sq, a, b);
    for (int i = 0; i < 5; ++i) CHECK(distance(sq, g[i], g[i + 1]) == doctest::Approx(total / 5).epsilon(1e-9));
  }
}

TEST_CASE("ellipsoid geodesic midpoints minimize the larger distance") {
  const ConvexDomain disk = fixtures::unit_disk();
  const Vec x = vec({-0.3, 0.4}), y = vec({0.6, -0.2});
  const Vec m = geodesic(disk, x, y, 2)[1];
  const double best = std::max(distance(disk, m, x), distance(disk, m, y));
  for (int i = 1; i < 50; ++i) {
    const Vec s = x + (y - x) * (i / 50.0);
    CHECK(std::max(distance(disk, s, x), distance(disk, s, y)) >= best - 1e-12);
  }
}

TEST_CASE("chord projections") {
  const ConvexDomain disk = fixtures::unit_disk();
  const ChordProjection proj = chord_projection(disk, vec({-0.5, 0}), vec({0.5, 0}));
  CHECK((project_to_chord(disk, proj, vec({0.3, 0.4})).chart - vec({0.3, 0})).norm() < 1e-12);
  CHECK((project_to_chord(disk, proj, vec({0.2, 0})).chart - vec({0.2, 0})).norm() < 1e-12);

  std::mt19937_64 rng(4);
  for (const ConvexDomain& d : {fixtures::unit_disk(), fixtures::square(), fixtures::unit_triangle()}) {
    const Vec a = fixtures::random_inside(d, rng, 0.7), b = fixtures::random_inside(d, rng, 0.7);
    const ChordProjection p = chord_projection(d, a, b);
    for (int i = 0; i < 200; ++i) {
      const Vec x = fixtures::random_inside(d, rng, 0.9), y = fixtures::random_inside(d, rng, 0.9);
      const Vec px = project_to_chord(d, p, x).chart, py = project_to_chord(d, p, y).chart;
      if ((px - py).norm() < 1e-12) continue;
      CHECK(distance(d, px, py) <= distance(d, x, y) + 1e-9);
    }
  }
}

TEST_CASE("thin triangles") {
  const ConvexDomain disk = fixtures::unit_disk();
  const DeltaResult flat = thin_triangle_delta(disk, {vec({-0.5, 0}), vec({0, 0}), vec({0.5, 0})});
  CHECK(flat.degenerate);
  CHECK(flat.delta == 0.0);

  const std::array<Vec, 3> t{vec({0.9, 0}), vec({-0.45, 0.7}), vec({-0.45, -0.7})};
  const DeltaResult coarse = thin_triangle_delta(disk, t, 16);
  const DeltaResult fine = thin_triangle_delta(disk, t, 64);
  CHECK(fine.delta >= coarse.delta);
  // Threads do not change the answer.
  CHECK(thin_triangle_delta(disk, t, 64, 4).delta == fine.delta);
  // Hyperbolic triangles are log(1 + sqrt 2)-thin.
  CHECK(fine.delta < std::log(1 + std::sqrt(2.0)) + 1e-9);
}

TEST_CASE("van der Corput sequence") {
  CHECK(van_der_corput(1) == 0.5);
  CHECK(van_der_corput(2) == 0.25);
  CHECK(van_der_corput(3) == 0.75);
}
