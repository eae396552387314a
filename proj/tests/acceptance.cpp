// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "pconvex/group.hpp"
#include "pconvex/hilbert.hpp"
#include "pconvex/normalize.hpp"
#include "pconvex/plconvex.hpp"
#include "pconvex/vinberg.hpp"

using namespace pconvex;
using fixtures::vec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double sign_free(const Vec& a, const Vec& b) { return std::min((a - b).norm(), (a + b).norm()); }

Mat diag(const Vec& v) { return v.asDiagonal().toDenseMatrix(); }

// Homogeneous chart-basis matrix of z -> linear * (z - translation).
Mat normalizing_map(const Normalization& n) {
  const int d = static_cast<int>(n.linear.rows());
  Mat m = Mat::Identity(d + 1, d + 1);
  m.topLeftCorner(d, d) = n.linear;
  m.topRightCorner(d, 1) = -n.linear * n.translation;
  return m;
}

// ---- 1 ----
void hilbert_axioms(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double worst_sym = 0.0, worst_tri = -1.0;
  for (const ConvexDomain& d : {fixtures::unit_disk(), fixtures::square(), fixtures::unit_triangle()}) {
    for (int i = 0; i < 10000; ++i) {
      const Vec x = fixtures::random_inside(d, rng, 0.999), y = fixtures::random_inside(d, rng, 0.999),
                z = fixtures::random_inside(d, rng, 0.999);
      const double xy = distance(d, x, y), yx = distance(d, y, x), yz = distance(d, y, z), xz = distance(d, x, z);
      worst_sym = std::max(worst_sym, std::abs(xy - yx));
      worst_tri = std::max(worst_tri, xz - xy - yz);
    }
  }
  const double half_log3 = distance(fixtures::unit_disk(), vec({0, 0}), vec({0.5, 0}));
  const double err = std::abs(half_log3 - 0.5 * std::log(3.0));
  const double elapsed = seconds_since(t0);
  o.require(worst_sym <= 1e-9, "symmetry");
  o.require(worst_tri <= 1e-9, "triangle inequality");
  o.require(err <= 1e-10, "disk value");
  o.require(elapsed < 10.0, "runtime");
  o.detail << "symmetry " << worst_sym << ", triangle excess " << worst_tri << ", |d - log3/2| " << err << ", "
           << elapsed << " s";
}

// ---- 2 ----
void projection_contracts(Outcome& o) {
  std::mt19937_64 rng(202);
  std::vector<Vec> hex_dirs;
  for (int i = 0; i < 7; ++i) hex_dirs.push_back(vec({std::cos(2 * M_PI * i / 7), std::sin(2 * M_PI * i / 7)}));
  const std::vector<ConvexDomain> domains{
      fixtures::unit_disk(), fixtures::square(), fixtures::unit_triangle(),
      ConvexDomain::hpoly(Chart::standard(3), {{vec({1, 0}), 1}, {vec({-1, 0}), 1}, {vec({0, 1}), 0.5},
                                               {vec({0, -1}), 0.5}, {vec({1, 1}).normalized(), 1}}),
      ConvexDomain::radial_graph(Chart::standard(3), vec({0, 0}), hex_dirs, std::vector<double>(7, 1.0))};
  double worst = -1.0;
  int checked = 0;
  for (const auto& d : domains) {
    for (int i = 0; i < 1000; ++i) {
      // A fresh chord every 50 pairs.
      static ChordProjection proj;
      if (i % 50 == 0) {
        proj = chord_projection(d, fixtures::random_inside(d, rng, 0.8), fixtures::random_inside(d, rng, 0.8));
      }
      const Vec x = fixtures::random_inside(d, rng, 0.95), y = fixtures::random_inside(d, rng, 0.95);
      const Vec px = project_to_chord(d, proj, x).chart, py = project_to_chord(d, proj, y).chart;
      const double before = distance(d, x, y);
      const double after = (px - py).norm() == 0.0 ? 0.0 : distance(d, px, py);
      worst = std::max(worst, after - before);
      ++checked;
    }
  }
  o.require(worst <= 1e-9, "non-expansive");
  o.detail << checked << " pairs over " << domains.size() << " backends, max d(px,py) - d(x,y) = " << worst;
}

// ---- 3 ----
void orthant_oracle(Outcome& o) {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  double worst = 0.0, worst_hom = 0.0;
  for (int n1 = 2; n1 <= 4; ++n1) {
    const ConvexCone cone(fixtures::orthant(n1));
    double fact = 1.0;
    for (int i = 2; i <= n1; ++i) fact *= i;
    for (int trial = 0; trial < 50; ++trial) {
      Vec phi(n1);
      for (int i = 0; i < n1; ++i) phi[i] = u(rng);
      const double exact = 1.0 / (fact * phi.prod());
      const double v = volume_functional(cone, phi).value;
      worst = std::max(worst, std::abs(v - exact) / exact);
      const double t = u(rng);
      const double scaled = volume_functional(cone, t * phi).value * std::pow(t, n1);
      worst_hom = std::max(worst_hom, std::abs(scaled - v) / v);
    }
  }
  const PLSurfaceResult pl = pl_characteristic_surface(ConvexCone(fixtures::orthant(2)), 16);
  double worst_s = 0.0;
  for (const auto& x : pl.surface.vertices()) worst_s = std::max(worst_s, std::abs(x[0] * x[1] - 0.5));
  o.require(worst <= 1e-12, "closed form");
  o.require(worst_hom <= 1e-12, "homogeneity");
  o.require(pl.surface.vertices().size() == 16 && worst_s <= 1e-8, "x1 x2 = 1/2");
  o.require(pl.certificate.certified, "PL certificate");
  o.detail << "relative error " << worst << ", homogeneity " << worst_hom << ", |x1 x2 - 1/2| " << worst_s
           << " at 16 directions";
}

// ---- 4 ----
void gradient_check(Outcome& o) {
  std::mt19937_64 rng(404);
  const std::vector<ConvexCone> cones{ConvexCone(fixtures::orthant(3)), ConvexCone(fixtures::round_cone(3)),
                                      ConvexCone(fixtures::square()), ConvexCone(fixtures::orthant(4))};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const ConvexCone& cone = cones[trial % cones.size()];
    // Random interior point of the dual domain, lifted with random scale.
    const ConvexDomain dual = dual_domain(cone.domain());
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    const Vec v = scale(rng) * dual.chart().ray(fixtures::random_inside(dual, rng, 0.9));
    const Vec g = grad_volume(cone, v);
    Vec fd(v.size());
    for (int i = 0; i < v.size(); ++i) {
      const double h = 1e-5 * v.norm();
      const Vec e = Vec::Unit(v.size(), i) * h;
      fd[i] = (volume_functional(cone, v + e).value - volume_functional(cone, v - e).value) / (2 * h);
    }
    worst = std::max(worst, (g - fd).norm() / g.norm());
  }
  o.require(worst < 1e-4, "finite differences");
  o.detail << "max relative error " << worst << " over 50 functionals";
}

// ---- 5 ----
void theta_round_trip(Outcome& o) {
  std::mt19937_64 rng(505);
  double worst = 0.0, worst_eq = 0.0;
  struct Case {
    ConvexCone cone;
    std::function<Mat(std::mt19937_64&)> automorphism;
  };
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<Case> cases{
      {ConvexCone(fixtures::orthant(3)),
       [&](std::mt19937_64& r) {
         const double a = u(r), b = u(r);
         return diag(vec({std::exp(a), std::exp(b), std::exp(-a - b)}));
       }},
      {ConvexCone(fixtures::round_cone(3)),
       [&](std::mt19937_64& r) { return Mat(fixtures::rotation_z(3 * u(r)) * fixtures::boost(u(r))); }}};
  for (const auto& c : cases) {
    const VolumeModel model(c.cone);
    const ConvexDomain& d = c.cone.domain();
    for (int i = 0; i < 100; ++i) {
      const ProjPoint p = d.lift(fixtures::random_inside(d, rng, 0.95));
      const Vec v = theta_inverse(model, p);
      worst = std::max(worst, (theta(model, v).coords() - p.coords()).norm());
      if (i < 20) {
        const ProjTransform a(c.automorphism(rng));
        const ProjPoint lhs = theta(model, dual_apply(a, DualFunctional(v)).coeffs());
        const ProjPoint rhs = apply(a, theta(model, v));
        worst_eq = std::max(worst_eq, sign_free(lhs.coords(), rhs.coords()));
      }
    }
  }
  o.require(worst < 1e-6, "round trip");
  o.require(worst_eq < 1e-7, "equivariance");
  o.detail << "round-trip residual " << worst << " (200 points), equivariance residual " << worst_eq;
}

// ---- 6 ----
void spherical_centers(Outcome& o) {
  const double round = (spherical_center(fixtures::round_cone(3)).center.coords() - Vec::Unit(3, 2)).norm();
  double orth = 0.0;
  for (int n1 = 2; n1 <= 4; ++n1) {
    orth = std::max(orth, sign_free(spherical_center(fixtures::orthant(n1)).center.coords(),
                                    Vec::Constant(n1, 1 / std::sqrt(double(n1)))));
  }
  const ConvexDomain quad =
      ConvexDomain::vpoly(Chart::standard(3), {vec({-0.5, -0.3}), vec({0.8, -0.4}), vec({0.3, 0.9}), vec({-0.6, 0.5})});
  const Vec base = spherical_center(quad).center.coords();
  std::mt19937_64 rng(606);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Mat a = fixtures::random_rotation(3, rng);
    const Vec moved = spherical_center(quad.transformed(ProjTransform(a))).center.coords();
    worst = std::max(worst, sign_free(moved, a * base));
  }
  o.require(round < 1e-9, "round cone");
  o.require(orth < 1e-8, "orthant");
  o.require(worst < 1e-7, "equivariance");
  o.detail << "round " << round << ", orthant " << orth << ", O(3) residual " << worst << " over 20 rotations";
}

// ---- 7 ----
void isotropic(Outcome& o) {
  Mat q(2, 2);
  q << 1.0 / 18, -1.0 / 36, -1.0 / 36, 1.0 / 18;
  const double tri = (moments(fixtures::unit_triangle()).second_moment - q).norm();
  double worst_q = 0.0;
  bool sandwiches = true;
  const std::vector<ConvexDomain> domains{
      fixtures::unit_triangle(), fixtures::square(), fixtures::orthant(3), fixtures::orthant(4),
      ConvexDomain::ellipsoid(Chart::standard(3), vec({0.3, -0.2}), (Mat(2, 2) << 4, 1, 1, 0.5).finished())};
  for (const auto& d : domains) {
    const Normalization n = isotropic_normalize(d);
    worst_q = std::max(worst_q, (moments(n.domain).second_moment - Mat::Identity(d.dim(), d.dim())).norm());
    sandwiches = sandwiches && n.sandwich.certified;
  }
  const BoxSandwich disk = isotropic_normalize(fixtures::unit_disk()).sandwich;
  const double disk_err = std::max(std::abs(disk.inner_K - 2), std::abs(disk.outer_K - 2));
  o.require(tri < 1e-12, "triangle moments");
  o.require(worst_q < 1e-9, "isotropic");
  o.require(sandwiches, "sandwich certified");
  o.require(disk_err < 1e-9 && disk.certified, "disk K = 2");
  o.detail << "triangle Q error " << tri << ", max |Q - I| " << worst_q << " over " << domains.size()
           << " domains, disk K error " << disk_err;
}

// ---- 8 ----
struct BoxTally {
  int samples = 0;
  int hypothesis_failures = 0;
  int violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
};

void box_case(const ConvexDomain& d, const std::function<Mat(std::mt19937_64&)>& aut, int count, std::mt19937_64& rng,
              BoxTally& tally) {
  const Normalization n = isotropic_normalize(d);
  const double k = n.sandwich.outer_K;
  const Mat norm = normalizing_map(n);
  const Mat norm_inv = norm.inverse();
  // Shrink the box into K^{-1} B so [A](B) lands in K B, then rescale to K^2 B.
  const int n1 = d.ambient_dim();
  Vec s = Vec::Constant(n1, 1.0 / k);
  s[n1 - 1] = 1.0;
  for (int i = 0; i < count; ++i) {
    const Mat a = d.chart().to_chart_basis(aut(rng));
    const Mat normalized = norm * a * norm_inv;
    const Mat conj = s.cwiseInverse().asDiagonal() * normalized * s.asDiagonal();
    const BoxCheck c = box_bound_check(conj, k * k);
    ++tally.samples;
    if (!c.hypothesis_holds) ++tally.hypothesis_failures;
    if (c.hypothesis_holds && !c.conclusion_holds) ++tally.violations;
    tally.min_margin = std::min(tally.min_margin, c.min_margin);
  }
}

void box_estimate(Outcome& o) {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BoxTally tally;
  auto so21 = [&](std::mt19937_64& r) {
    Mat m = Mat::Identity(3, 3);
    for (int i = 0; i < 3; ++i) m = fixtures::rotation_z(M_PI * u(r)) * fixtures::boost(1.5 * u(r)) * m;
    return m;
  };
  box_case(fixtures::unit_disk(), so21, 400, rng, tally);
  // A projective image of the Klein disk; its automorphisms are conjugates.
  const Mat p = (Mat(3, 3) << 1.5, 0.2, 0.1, 0, 0.8, -0.2, 0.1, 0, 1).finished();
  box_case(fixtures::unit_disk().transformed(ProjTransform(p), Chart::standard(3)),
           [&](std::mt19937_64& r) { return Mat(p * so21(r) * p.inverse()); }, 300, rng, tally);
  box_case(fixtures::orthant(3),
           [&](std::mt19937_64& r) {
             const double a = 2 * u(r), b = 2 * u(r);
             return diag(vec({std::exp(a), std::exp(b), std::exp(-a - b)}));
           },
           300, rng, tally);
  o.require(tally.violations == 0, "entry bound");
  o.require(tally.hypothesis_failures == 0, "box hypothesis");
  o.detail << tally.samples << " automorphisms, " << tally.violations << " violations, " << tally.hypothesis_failures
           << " hypothesis failures, min margin " << tally.min_margin;
}

// ---- 9 ----
void degeneration(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  RepSequence squash;
  for (int k = 1; k <= 64; ++k) {
    squash.domains.push_back(ConvexDomain::ellipsoid(Chart::standard(3), Vec::Zero(2), diag(vec({1.0, 1.0 / (k * k)}))));
  }
  const DegenerationReport r = analyze_sequence(squash);
  double disk_residual = 0.0;
  for (const auto& u : sample_directions(2, 256)) {
    disk_residual = std::max(disk_residual, std::abs(r.steps.back().normalized->support_value(u) - 2.0));
  }

  RepSequence boosts;
  boosts.generators = {"a"};
  boosts.base_domain = fixtures::unit_disk();
  for (int k = 1; k <= 16; ++k) {
    const Mat d = diag(vec({double(k), 1.0, 1.0 / k}));
    boosts.conjugators.push_back(d);
    boosts.terms.push_back({d * fixtures::boost(0.8) * d.inverse()});
  }
  const DegenerationReport b = analyze_sequence(boosts);
  const double elapsed = seconds_since(t0);
  o.require(r.slope_log_d > 0 && !r.d_bounded, "D_k growth");
  o.require(disk_residual < 1e-3, "limit disk");
  o.require(b.raw_blowup && b.b_bounded, "boost family flags");
  o.require(elapsed < 60.0, "runtime");
  o.detail << "squash slope " << r.slope_log_d << ", disk residual " << disk_residual << "; boosts: \"" << b.verdict
           << "\", max |B| " << b.steps.back().max_entry_b << ", max |A raw| " << b.steps.back().max_entry_raw << ", "
           << elapsed << " s";
}

// ---- 10 ----
void pl_convexity(Outcome& o) {
  const SimplicialHypersurface poly({vec({-1, 2}), vec({0, 1}), vec({1, 2})}, {{0, 1}, {1, 2}});
  const VertexConvexity vc = vertex_convexity(poly, 1);
  const bool dets = vc.determinants.size() == 2 && std::abs(vc.determinants[0] - 2) < 1e-14 &&
                    std::abs(vc.determinants[1] - 2) < 1e-14;
  const ConvexityCertificate cert = certify_generic_convex(poly);
  const SimplicialHypersurface dented({vec({-2, 3}), vec({-1, 2}), vec({0, 2.5}), vec({1, 2}), vec({2, 3})},
                                      {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const ConvexityCertificate dent = certify_generic_convex(dented);
  const PerturbationReport pr = perturbation_radius(poly, 1, 100);

  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int midpoint_tests = 0, midpoint_failures = 0;
  for (const auto& s : {poly, pl_characteristic_surface(ConvexCone(fixtures::round_cone(3)), 64).surface,
                        pl_characteristic_surface(ConvexCone(fixtures::orthant(3)), 64).surface}) {
    if (!certify_generic_convex(s).certified) ++midpoint_failures;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(s.simplices().size()) - 1);
    const int n1 = s.ambient_dim();
    auto sample = [&] {
      const Mat m = s.simplex_matrix(pick(rng));
      Vec c(n1);
      for (int i = 0; i < n1; ++i) c[i] = -std::log(u(rng));
      return Vec(std::exp(2.0 * u(rng) - 1.0) * m * (c / c.sum()));
    };
    for (int i = 0; i < 3334; ++i) {
      const Vec a = sample(), b = sample();
      const double mid = log_contour_value(s, 0.5 * (a + b));
      if (mid > 0.5 * (log_contour_value(s, a) + log_contour_value(s, b)) + 1e-10) ++midpoint_failures;
      ++midpoint_tests;
    }
  }
  o.require(dets && vc.sign == 1 && cert.certified, "worked polyline");
  o.require(!dent.certified, "dent rejected");
  o.require(pr.passed == 100, "perturbations");
  o.require(midpoint_failures == 0, "h convex");
  o.detail << "determinants " << vc.determinants[0] << ", " << vc.determinants[1] << "; dent violations "
           << dent.violations.size() << "; epsilon " << pr.epsilon << ", " << pr.passed << "/100 re-certified; "
           << midpoint_tests << " midpoint tests, " << midpoint_failures << " failures";
}

// ---- 11 ----
void thin_triangles(Outcome& o) {
  const ConvexDomain disk = fixtures::unit_disk();
  std::vector<double> disk_delta;
  for (double r : {0.9, 0.99, 0.999, 0.9999, 0.99999}) {
    std::array<Vec, 3> t;
    for (int i = 0; i < 3; ++i) t[i] = r * vec({std::cos(2 * M_PI * i / 3), std::sin(2 * M_PI * i / 3)});
    disk_delta.push_back(thin_triangle_delta(disk, t, 256, 4).delta);
  }
  const double disk_max = *std::max_element(disk_delta.begin(), disk_delta.end());

  const ConvexDomain tri = fixtures::unit_triangle();
  const Vec c = vec({1.0 / 3, 1.0 / 3});
  // Vertices toward the edge midpoints, so the triangle is inscribed in the dual position.
  const std::array<Vec, 3> mids{vec({0.5, 0}), vec({0.5, 0.5}), vec({0, 0.5})};
  std::vector<double> tri_delta;
  bool increasing = true;
  for (double s : {0.5, 0.8, 0.95, 0.99, 0.999}) {
    std::array<Vec, 3> t;
    for (int i = 0; i < 3; ++i) t[i] = c + s * (mids[i] - c);
    tri_delta.push_back(thin_triangle_delta(tri, t, 256, 4).delta);
    if (tri_delta.size() > 1) increasing = increasing && tri_delta.back() > tri_delta[tri_delta.size() - 2];
  }
  o.require(disk_max <= 2 * disk_delta.front(), "disk bounded");
  o.require(increasing, "triangle grows");
  o.detail << "disk delta";
  for (double d : disk_delta) o.detail << ' ' << d;
  o.detail << "; triangle delta";
  for (double d : tri_delta) o.detail << ' ' << d;
}

// ---- 12 ----
void dynamics(Outcome& o) {
  const ConvexDomain disk = fixtures::unit_disk();
  std::mt19937_64 rng(1212);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_len = 0.0, worst_conv = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double t = 0.2 + 2.8 * u(rng);
    const Mat g = fixtures::rotation_z(2 * M_PI * u(rng)) * fixtures::boost(1.5 * u(rng));
    const ProjTransform a(g * fixtures::boost(t) * g.inverse());
    const HyperbolicData h = fixed_point_dynamics(disk, a);
    worst_len = std::max(worst_len, std::abs(h.translation_length - h.eigenvalue_length));
    worst_len = std::max(worst_len, std::abs(h.eigenvalue_length - t));
    ProjPoint x = disk.lift(fixtures::disk_point(rng, 0.5));
    const Vec target = disk.to_chart(h.a_plus);
    double dist = 1.0;
    for (int k = 0; k < 2000 && dist >= 1e-7; ++k) {
      x = apply(a, x);
      dist = (disk.to_chart(x) - target).norm();
    }
    worst_conv = std::max(worst_conv, dist);
  }
  o.require(worst_len < 1e-6, "translation length");
  o.require(worst_conv < 1e-6, "convergence");
  o.detail << "max length discrepancy " << worst_len << ", max final chart distance " << worst_conv
           << " over 50 boosts";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"Hilbert metric axioms", hilbert_axioms},
      {"projection non-expansiveness", projection_contracts},
      {"orthant oracle for the volume functional", orthant_oracle},
      {"gradient vs finite differences", gradient_check},
      {"Theta round trip and equivariance", theta_round_trip},
      {"spherical centers", spherical_centers},
      {"isotropic normalization", isotropic},
      {"box estimate on automorphisms", box_estimate},
      {"degeneration pipeline", degeneration},
      {"PL convexity", pl_convexity},
      {"thin triangles", thin_triangles},
      {"hyperbolic dynamics", dynamics},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const Error& e) {
      o.pass = false;
      o.detail << " error [" << error_code_name(e.code()) << "]: " << e.what();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    failures += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
