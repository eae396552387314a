#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "pconvex/group.hpp"
#include "pconvex/hilbert.hpp"

using namespace pconvex;
using fixtures::vec;

namespace {

Mat diag(const Vec& v) { return v.asDiagonal().toDenseMatrix(); }

}  // namespace

TEST_CASE("automorphism membership") {
  const ConvexDomain disk = fixtures::unit_disk();
  CHECK(is_automorphism(disk, ProjTransform(fixtures::boost(0.6))).holds);
  CHECK(is_automorphism(disk, ProjTransform(fixtures::rotation_z(0.3))).holds);
  CHECK(!is_automorphism(disk, ProjTransform(diag(vec({2, 1, 0.5})))).holds);
  CHECK(is_automorphism(fixtures::orthant(3), ProjTransform(diag(vec({2, 1, 0.5})))).holds);
  // A permutation of the coordinate simplex.
  Mat perm = Mat::Zero(3, 3);
  perm(0, 1) = perm(1, 2) = perm(2, 0) = 1;
  CHECK(is_automorphism(fixtures::orthant(3), ProjTransform(perm)).holds);
  CHECK(!is_automorphism(fixtures::square(), ProjTransform(fixtures::rotation_z(0.3))).holds);
}

TEST_CASE("hyperbolic dynamics") {
  const ConvexDomain ray = fixtures::orthant(2);
  const HyperbolicData h = fixed_point_dynamics(ray, ProjTransform(diag(vec({M_E, 1 / M_E}))));
  CHECK(h.translation_length == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(h.eigenvalue_length == doctest::Approx(1.0).epsilon(1e-12));

  const ConvexDomain disk = fixtures::unit_disk();
  const ProjTransform b(fixtures::boost(0.7));
  const HyperbolicData hb = fixed_point_dynamics(disk, b);
  CHECK(hb.translation_length == doctest::Approx(0.7).epsilon(1e-8));
  CHECK(hb.eigenvalue_length == doctest::Approx(0.7).epsilon(1e-12));
  CHECK((disk.to_chart(hb.a_plus) - vec({1, 0})).norm() < 1e-8);

  const HyperbolicData inv = fixed_point_dynamics(disk, b.inverse());
  CHECK(same_projective_point(inv.a_plus, hb.a_minus, 1e-8));
  CHECK(same_projective_point(inv.a_minus, hb.a_plus, 1e-8));

  try {
    fixed_point_dynamics(disk, ProjTransform(fixtures::rotation_z(0.4)));
    FAIL("elliptic element accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotHyperbolic);
  }
  try {
    fixed_point_dynamics(disk, ProjTransform(diag(vec({2, 1, 0.5}))));
    FAIL("non-automorphism accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAutomorphismInconsistency);
  }
}

TEST_CASE("words and orbits") {
  const std::vector<ProjTransform> gens{ProjTransform(fixtures::boost(0.5)),
                                        ProjTransform(fixtures::rotation_z(1.0) * fixtures::boost(0.5) *
                                                      fixtures::rotation_z(-1.0))};
  const auto words = reduced_words(gens, 2);
  // 1 + 4 + 4*3 reduced words.
  CHECK(words.size() == 17);
  CHECK(words.front().label.empty());
  CHECK(words[1].label == "a");
  CHECK(words[2].label == "A");
  CHECK(inverse_label("aB") == "bA");

  const ProjPoint seed(vec({0.1, 0.2, 1}));
  CHECK(orbit(gens, seed, 0).size() == 1);
  const auto cyclic = orbit({gens[0]}, seed, 3);
  CHECK(cyclic.size() == 7);

  // Longer words push the orbit toward the frontier.
  const ConvexDomain disk = fixtures::unit_disk();
  double previous = 1.0;
  for (int len = 1; len <= 6; ++len) {
    double smallest = 1.0;
    for (const auto& p : orbit(gens, seed, len)) smallest = std::min(smallest, disk.contains(p.point).margin);
    CHECK(smallest <= previous);
    previous = smallest;
  }
  CHECK(previous < 0.05);
}

TEST_CASE("Dirichlet domains") {
  const ConvexCone ray(fixtures::orthant(2));
  const std::vector<ProjTransform> gens{ProjTransform(diag(vec({M_E, 1 / M_E})))};
  const DirichletDomain q = dirichlet_domain(ray, gens, vec({1, 1}), 2);
  REQUIRE(q.bounded);
  REQUIRE(q.vertices.size() == 2);
  const Vec a = q.lift(q.vertices[0]), b = q.lift(q.vertices[1]);
  CHECK(distance(ray.domain(), ProjPoint(a), ProjPoint(b)) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(q.facets.size() == 2);
  CHECK(q.stable);

  // Moving the basepoint along the axis moves Q by the same automorphism.
  const Mat half = diag(vec({std::exp(0.25), std::exp(-0.25)}));
  const DirichletDomain moved = dirichlet_domain(ray, gens, half * vec({1, 1}), 2);
  REQUIRE(moved.vertices.size() == 2);
  for (const auto& v : q.vertices) {
    const ProjPoint image(half * q.lift(v));
    bool matched = false;
    for (const auto& w : moved.vertices) matched = matched || same_projective_point(image, ProjPoint(moved.lift(w)), 1e-8);
    CHECK(matched);
  }

  const DirichletDomain trivial = dirichlet_domain(ConvexCone(fixtures::orthant(3)), {}, vec({1, 1, 1}), 2);
  CHECK(trivial.bounded);
  CHECK(trivial.facets.size() == 3);
  for (const auto& f : trivial.facets) CHECK(f.word == "cone");

  CHECK_THROWS_AS(dirichlet_domain(ConvexCone(fixtures::orthant(3)), {ProjTransform(Mat::Identity(3, 3))},
                                   vec({1, 1, 1}), 1),
                  Error);
}
