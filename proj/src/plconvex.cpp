#include "pconvex/plconvex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace pconvex {

namespace {

class Variates {
 public:
  explicit Variates(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53; }
  double normal() {
    const double a = uniform(), b = uniform();
    return std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * std::numbers::pi * b);
  }
  Vec direction(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v.normalized();
  }

 private:
  std::mt19937_64 rng_;
};

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

Mat shifted_columns(const Mat& sigma, const Vec& u) { return sigma.colwise() - u; }

}  // namespace

SimplicialHypersurface::SimplicialHypersurface(std::vector<Vec> vertices, std::vector<std::vector<int>> simplices)
    : vertices_(std::move(vertices)), simplices_(std::move(simplices)) {
  if (vertices_.empty() || simplices_.empty()) throw Error(ErrorCode::kInvalidInput, "empty simplicial hypersurface");
  const int n1 = static_cast<int>(vertices_.front().size());
  if (n1 < 2) throw Error(ErrorCode::kInvalidInput, "hypersurface needs ambient dimension >= 2");
  for (const auto& v : vertices_) {
    if (v.size() != n1 || !v.allFinite() || v.norm() == 0.0) {
      throw Error(ErrorCode::kInvalidInput, "vertices must be nonzero finite vectors of equal length");
    }
  }
  const double sc = scale();
  const int count = static_cast<int>(vertices_.size());
  for (size_t s = 0; s < simplices_.size(); ++s) {
    auto& simplex = simplices_[s];
    if (static_cast<int>(simplex.size()) != n1) {
      throw Error(ErrorCode::kInvalidInput, "each simplex needs " + std::to_string(n1) + " vertices");
    }
    std::set<int> distinct(simplex.begin(), simplex.end());
    for (int idx : simplex) {
      if (idx < 0 || idx >= count) throw Error(ErrorCode::kInvalidInput, "simplex vertex index out of range");
    }
    if (static_cast<int>(distinct.size()) != n1) throw Error(ErrorCode::kInvalidInput, "repeated vertex in simplex");
    Mat edges(n1, n1 - 1);
    for (int i = 1; i < n1; ++i) edges.col(i - 1) = vertices_[simplex[i]] - vertices_[simplex[0]];
    Eigen::JacobiSVD<Mat> svd(edges);
    if (!(svd.singularValues()[n1 - 2] > 1e-10 * sc)) {
      throw Error(ErrorCode::kInvalidInput, "degenerate simplex " + std::to_string(s));
    }
    for (int drop = 0; drop < n1; ++drop) {
      std::vector<int> face;
      for (int i = 0; i < n1; ++i) {
        if (i != drop) face.push_back(simplex[i]);
      }
      std::sort(face.begin(), face.end());
      auto& owners = adjacency_[face];
      owners.push_back(static_cast<int>(s));
      if (owners.size() > 2) throw Error(ErrorCode::kInvalidInput, "face shared by more than two simplices");
    }
  }
  boundary_vertex_.assign(count, false);
  for (const auto& [face, owners] : adjacency_) {
    if (owners.size() == 1) {
      for (int v : face) boundary_vertex_[v] = true;
    }
  }
}

bool SimplicialHypersurface::closed() const {
  return std::all_of(adjacency_.begin(), adjacency_.end(), [](const auto& kv) { return kv.second.size() == 2; });
}

Mat SimplicialHypersurface::simplex_matrix(int s) const {
  const auto& simplex = simplices_[s];
  Mat m(ambient_dim(), static_cast<int>(simplex.size()));
  for (size_t i = 0; i < simplex.size(); ++i) m.col(static_cast<int>(i)) = vertices_[simplex[i]];
  return m;
}

double SimplicialHypersurface::scale() const {
  double sc = 0.0;
  for (const auto& v : vertices_) sc = std::max(sc, v.norm());
  return sc;
}

SimplicialHypersurface SimplicialHypersurface::scaled(double factor) const {
  std::vector<Vec> verts;
  for (const auto& v : vertices_) verts.push_back(factor * v);
  return {std::move(verts), simplices_};
}

SimplicialHypersurface SimplicialHypersurface::mapped(const Mat& a) const {
  std::vector<Vec> verts;
  for (const auto& v : vertices_) verts.push_back(a * v);
  return {std::move(verts), simplices_};
}

SimplicialHypersurface SimplicialHypersurface::with_vertices(std::vector<Vec> vertices) const {
  return {std::move(vertices), simplices_};
}

RadialSectionResult radial_section_check(const SimplicialHypersurface& s) {
  RadialSectionResult out;
  const int count = static_cast<int>(s.simplices().size());
  const int n1 = s.ambient_dim();
  std::vector<Eigen::FullPivLU<Mat>> solvers;
  solvers.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Mat m = s.simplex_matrix(i);
    double prod = 1.0;
    for (int c = 0; c < n1; ++c) prod *= m.col(c).norm();
    if (std::abs(m.determinant()) <= 1e-10 * prod) out.transversality_failures.push_back(i);
    solvers.emplace_back(m);
  }
  // Local injectivity: neighbours across a face lie on opposite sides of
  // the linear hyperplane spanned by the face.
  for (const auto& [face, owners] : s.adjacency()) {
    if (owners.size() != 2) continue;
    Mat fm(n1, n1);
    for (size_t i = 0; i < face.size(); ++i) fm.col(static_cast<int>(i)) = s.vertices()[face[i]];
    int signs[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
      for (int v : s.simplices()[owners[k]]) {
        if (!std::binary_search(face.begin(), face.end(), v)) {
          fm.col(n1 - 1) = s.vertices()[v];
          signs[k] = sign_of(fm.determinant());
        }
      }
    }
    if (signs[0] == signs[1]) out.orientation_failures.push_back(owners[0]);
  }
  // Global injectivity on barycentric sample rays.
  if (out.transversality_failures.empty()) {
    const double tol = 1e-12;
    for (int i = 0; i < count; ++i) {
      const Vec ray = s.simplex_matrix(i).rowwise().mean();
      int hits = 0;
      for (int j = 0; j < count; ++j) {
        const Vec c = solvers[j].solve(ray);
        if (c.minCoeff() >= -tol * c.cwiseAbs().maxCoeff()) ++hits;
      }
      if (hits != 1) out.overlaps.push_back(i);
    }
  }
  out.ok = out.transversality_failures.empty() && out.orientation_failures.empty() && out.overlaps.empty();
  return out;
}

namespace {

double coplanar_tol(const SimplicialHypersurface& s) { return 1e-12 * std::pow(s.scale(), s.ambient_dim()); }

std::vector<int> star_of(const SimplicialHypersurface& s, int v) {
  std::vector<int> star;
  for (size_t i = 0; i < s.simplices().size(); ++i) {
    const auto& simplex = s.simplices()[i];
    if (std::find(simplex.begin(), simplex.end(), v) != simplex.end()) star.push_back(static_cast<int>(i));
  }
  return star;
}

bool shares_face(const std::vector<int>& a, const std::vector<int>& b) {
  int common = 0;
  for (int x : a) common += std::find(b.begin(), b.end(), x) != b.end();
  return common == static_cast<int>(a.size()) - 1;
}

// (sigma, u) pairs tested at vertex v.
std::vector<std::pair<int, int>> vertex_pairs(const SimplicialHypersurface& s, int v, bool all_link) {
  const auto star = star_of(s, v);
  std::vector<std::pair<int, int>> pairs;
  for (int sigma : star) {
    const auto& sv = s.simplices()[sigma];
    std::set<int> candidates;
    for (int tau : star) {
      if (tau == sigma) continue;
      if (!all_link && !shares_face(sv, s.simplices()[tau])) continue;
      for (int u : s.simplices()[tau]) {
        if (std::find(sv.begin(), sv.end(), u) == sv.end()) candidates.insert(u);
      }
    }
    for (int u : candidates) pairs.emplace_back(sigma, u);
  }
  return pairs;
}

}  // namespace

VertexConvexity vertex_convexity(const SimplicialHypersurface& s, int v, bool all_link) {
  if (v < 0 || v >= static_cast<int>(s.vertices().size())) throw Error(ErrorCode::kInvalidInput, "vertex index out of range");
  if (s.is_boundary_vertex(v)) throw Error(ErrorCode::kInvalidInput, "vertex lies on the boundary of the complex");
  VertexConvexity out;
  out.margin = std::numeric_limits<double>::infinity();
  const double tol = coplanar_tol(s);
  bool plus = false, minus = false;
  for (const auto& [sigma, u] : vertex_pairs(s, v, all_link)) {
    const Mat m = s.simplex_matrix(sigma);
    const double det = shifted_columns(m, s.vertices()[u]).determinant();
    out.determinants.push_back(det);
    if (std::abs(det) <= tol) {
      throw Error(ErrorCode::kCoplanarity, "coplanar star at vertex " + std::to_string(v),
                  "{\"vertex\":" + std::to_string(v) + ",\"simplex\":" + std::to_string(sigma) +
                      ",\"link_vertex\":" + std::to_string(u) + "}");
    }
    out.margin = std::min(out.margin, std::abs(det));
    // +1 when u lies on the far side of aff(sigma) from the origin.
    const int oriented = -sign_of(det) * sign_of(m.determinant());
    (oriented > 0 ? plus : minus) = true;
  }
  out.sign = plus && minus ? 0 : (plus ? 1 : -1);
  return out;
}

ConvexityCertificate certify_generic_convex(const SimplicialHypersurface& s, bool all_link) {
  ConvexityCertificate cert;
  const RadialSectionResult radial = radial_section_check(s);
  for (int i : radial.transversality_failures) cert.violations.push_back({"transversality", i, "origin in affine hull"});
  for (int i : radial.orientation_failures) cert.violations.push_back({"overlap", i, "fold across a shared face"});
  for (int i : radial.overlaps) cert.violations.push_back({"overlap", i, "radial projection not injective"});
  if (!radial.ok) return cert;

  const double tol = coplanar_tol(s);
  const int n1 = s.ambient_dim();
  for (const auto& [face, owners] : s.adjacency()) {
    if (owners.size() != 2) continue;
    const auto& tau = s.simplices()[owners[1]];
    for (int u : tau) {
      if (std::binary_search(face.begin(), face.end(), u)) continue;
      const double det = shifted_columns(s.simplex_matrix(owners[0]), s.vertices()[u]).determinant();
      if (std::abs(det) <= tol) {
        cert.violations.push_back({"coplanar", owners[0], "adjacent to simplex " + std::to_string(owners[1])});
      }
    }
  }
  (void)n1;
  std::vector<std::pair<int, int>> signs;  // (vertex, sign)
  cert.margin = std::numeric_limits<double>::infinity();
  for (int v = 0; v < static_cast<int>(s.vertices().size()); ++v) {
    if (s.is_boundary_vertex(v)) continue;
    try {
      const VertexConvexity vc = vertex_convexity(s, v, all_link);
      signs.emplace_back(v, vc.sign);
      cert.margin = std::min(cert.margin, vc.margin);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCoplanarity) throw;
      cert.violations.push_back({"coplanar", v, "vanishing determinant in the star"});
    }
  }
  int plus = 0, minus = 0;
  for (const auto& [v, sg] : signs) {
    plus += sg > 0;
    minus += sg < 0;
  }
  cert.global_sign = plus >= minus ? 1 : -1;
  for (const auto& [v, sg] : signs) {
    if (sg != cert.global_sign) {
      cert.violations.push_back({"vertex", v, sg == 0 ? "inconsistent signs in the star" : "opposite orientation"});
    }
  }
  cert.certified = cert.violations.empty();
  return cert;
}

PerturbationReport perturbation_radius(const SimplicialHypersurface& s, std::uint64_t seed, int trials) {
  const ConvexityCertificate cert = certify_generic_convex(s);
  if (!cert.certified) {
    const bool coplanar = std::any_of(cert.violations.begin(), cert.violations.end(),
                                      [](const Violation& v) { return v.kind == "coplanar"; });
    throw Error(coplanar ? ErrorCode::kCoplanarity : ErrorCode::kNotCertified,
                "surface is not certified generic-convex");
  }
  const int n1 = s.ambient_dim();
  // Each determinant: column norms, per-column displacement factor, |det|.
  struct Det {
    std::vector<double> norms;
    double factor;
    double value;
  };
  std::vector<Det> dets;
  for (int v = 0; v < static_cast<int>(s.vertices().size()); ++v) {
    if (s.is_boundary_vertex(v)) continue;
    for (const auto& [sigma, u] : vertex_pairs(s, v, true)) {
      const Mat m = shifted_columns(s.simplex_matrix(sigma), s.vertices()[u]);
      Det d{{}, 2.0, std::abs(m.determinant())};
      for (int c = 0; c < n1; ++c) d.norms.push_back(m.col(c).norm());
      dets.push_back(std::move(d));
    }
  }
  for (int i = 0; i < static_cast<int>(s.simplices().size()); ++i) {
    const Mat m = s.simplex_matrix(i);
    Det d{{}, 1.0, std::abs(m.determinant())};
    for (int c = 0; c < n1; ++c) d.norms.push_back(m.col(c).norm());
    dets.push_back(std::move(d));
  }
  PerturbationReport out;
  out.margin = cert.margin;
  double lipschitz = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& d : dets) {
    double sum = 0.0;
    for (int i = 0; i < n1; ++i) {
      double prod = 1.0;
      for (int j = 0; j < n1; ++j) {
        if (j != i) prod *= d.norms[j];
      }
      sum += prod;
    }
    lipschitz = std::max(lipschitz, d.factor * sum);
    margin = std::min(margin, d.value);
  }
  out.lipschitz_bound = lipschitz;
  double eps = margin / (2.0 * lipschitz);
  // Exact multilinear bound: |det(M + E) - det M| <= prod(|m_j| + |e_j|) - prod |m_j|.
  auto safe = [&](double e) {
    for (const auto& d : dets) {
      double grown = 1.0, base = 1.0;
      for (double a : d.norms) {
        grown *= a + d.factor * e;
        base *= a;
      }
      if (!(grown - base < d.value)) return false;
    }
    return true;
  };
  while (!safe(eps)) eps *= 0.9;
  out.epsilon = eps;

  Variates rng(seed);
  auto perturbed_passes = [&](double magnitude) {
    std::vector<Vec> verts;
    for (const auto& v : s.vertices()) verts.push_back(v + magnitude * rng.direction(n1));
    try {
      return certify_generic_convex(s.with_vertices(std::move(verts))).certified;
    } catch (const Error&) {
      return false;
    }
  };
  out.trials = trials;
  for (int t = 0; t < trials; ++t) out.passed += perturbed_passes(0.9 * eps);
  for (int t = 0; t < trials && !out.fails_at_10x; ++t) out.fails_at_10x = !perturbed_passes(10.0 * eps);
  return out;
}

double log_contour_value(const SimplicialHypersurface& s, const Vec& x) {
  if (x.size() != s.ambient_dim()) throw Error(ErrorCode::kInvalidInput, "point dimension mismatch");
  double best_min = -std::numeric_limits<double>::infinity();
  double best_sum = 0.0;
  for (int i = 0; i < static_cast<int>(s.simplices().size()); ++i) {
    const Vec c = s.simplex_matrix(i).fullPivLu().solve(x);
    const double lo = c.minCoeff() / std::max(1e-300, c.cwiseAbs().maxCoeff());
    if (lo > best_min) {
      best_min = lo;
      best_sum = c.sum();
    }
  }
  if (best_min < -1e-12 || !(best_sum > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "point is outside the cone over the hypersurface");
  }
  return -std::log(best_sum);
}

OutwardResult outward_check(const SimplicialHypersurface& s, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::kInvalidInput, "scale factor must be positive");
  OutwardResult out;
  out.margin = std::numeric_limits<double>::infinity();
  auto test = [&](const Vec& p) {
    // Radial coordinate of t p minus the PL radial function, relative.
    const double h = log_contour_value(s, t * p);
    out.margin = std::min(out.margin, 1.0 - std::exp(h));
  };
  for (const auto& v : s.vertices()) test(v);
  for (int i = 0; i < static_cast<int>(s.simplices().size()); ++i) test(s.simplex_matrix(i).rowwise().mean());
  out.outward = out.margin > 1e-12;
  return out;
}

namespace {

struct Mesh2 {
  std::vector<Vec> chart;            // chart coordinates of the samples
  std::vector<std::array<int, 3>> tris;  // counter-clockwise in the chart
};

double orient2(const Vec& a, const Vec& b, const Vec& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

Mesh2 polar_mesh(const ConvexDomain& domain, int rings, double fraction) {
  Mesh2 mesh;
  const Vec c = domain.interior_point();
  mesh.chart.push_back(c);
  std::vector<std::vector<int>> ring_ids(rings + 1);
  ring_ids[0] = {0};
  for (int i = 1; i <= rings; ++i) {
    const int count = 6 * i;
    const double offset = 0.37 * i;
    for (int j = 0; j < count; ++j) {
      const double theta = offset + 2.0 * std::numbers::pi * j / count;
      Vec u(2);
      u << std::cos(theta), std::sin(theta);
      const double ext = domain.line_interval(c, u).second;
      ring_ids[i].push_back(static_cast<int>(mesh.chart.size()));
      mesh.chart.push_back(c + fraction * ext * static_cast<double>(i) / rings * u);
    }
  }
  auto angle = [&](int id) {
    const Vec d = mesh.chart[id] - c;
    double a = std::atan2(d[1], d[0]);
    return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
  };
  for (int j = 0; j < 6; ++j) mesh.tris.push_back({0, ring_ids[1][j], ring_ids[1][(j + 1) % 6]});
  for (int i = 1; i < rings; ++i) {
    std::vector<int> inner = ring_ids[i], outer = ring_ids[i + 1];
    auto by_angle = [&](int a, int b) { return angle(a) < angle(b); };
    std::sort(inner.begin(), inner.end(), by_angle);
    std::sort(outer.begin(), outer.end(), by_angle);
    // Zip the two rings by angle.
    size_t a = 0, b = 0;
    const size_t na = inner.size(), nb = outer.size();
    while (a < na || b < nb) {
      const int ia = inner[a % na], ib = outer[b % nb];
      const double next_a = angle(inner[(a + 1) % na]) + ((a + 1) >= na ? 2.0 * std::numbers::pi : 0.0);
      const double next_b = angle(outer[(b + 1) % nb]) + ((b + 1) >= nb ? 2.0 * std::numbers::pi : 0.0);
      if (b >= nb || (a < na && next_a < next_b)) {
        mesh.tris.push_back({ia, ib, inner[(a + 1) % na]});
        ++a;
      } else {
        mesh.tris.push_back({ia, ib, outer[(b + 1) % nb]});
        ++b;
      }
    }
  }
  for (auto& t : mesh.tris) {
    if (orient2(mesh.chart[t[0]], mesh.chart[t[1]], mesh.chart[t[2]]) < 0.0) std::swap(t[1], t[2]);
  }
  return mesh;
}

// Lawson flips toward local convexity of the lifted surface.
int lawson_flips(const std::vector<Vec>& lifted, const std::vector<Vec>& chart, std::vector<std::array<int, 3>>& tris) {
  int flips = 0;
  const int max_rounds = 1000;
  for (int round = 0; round < max_rounds; ++round) {
    std::map<std::pair<int, int>, std::vector<int>> edges;
    for (size_t t = 0; t < tris.size(); ++t) {
      for (int e = 0; e < 3; ++e) {
        int a = tris[t][e], b = tris[t][(e + 1) % 3];
        if (a > b) std::swap(a, b);
        edges[{a, b}].push_back(static_cast<int>(t));
      }
    }
    bool flipped = false;
    for (const auto& [edge, owners] : edges) {
      if (owners.size() != 2) continue;
      const auto& t0 = tris[owners[0]];
      const auto& t1 = tris[owners[1]];
      int r = -1, s = -1;
      for (int v : t0) {
        if (v != edge.first && v != edge.second) r = v;
      }
      for (int v : t1) {
        if (v != edge.first && v != edge.second) s = v;
      }
      Mat sigma(3, 3);
      for (int i = 0; i < 3; ++i) sigma.col(i) = lifted[t0[i]];
      const double det = shifted_columns(sigma, lifted[s]).determinant();
      if (-sign_of(det) * sign_of(sigma.determinant()) > 0) continue;
      // Flip only when the chart quadrilateral is strictly convex.
      const int p = edge.first, q = edge.second;
      const double o1 = orient2(chart[r], chart[s], chart[p]);
      const double o2 = orient2(chart[r], chart[s], chart[q]);
      if (!(o1 * o2 < 0.0)) continue;
      std::array<int, 3> n0{r, s, p}, n1{s, r, q};
      if (orient2(chart[n0[0]], chart[n0[1]], chart[n0[2]]) < 0.0) std::swap(n0[1], n0[2]);
      if (orient2(chart[n1[0]], chart[n1[1]], chart[n1[2]]) < 0.0) std::swap(n1[1], n1[2]);
      tris[owners[0]] = n0;
      tris[owners[1]] = n1;
      ++flips;
      flipped = true;
      break;
    }
    if (!flipped) break;
  }
  return flips;
}

}  // namespace

PLSurfaceResult pl_characteristic_surface(const ConvexCone& cone, int budget, const PLSurfaceOptions& options) {
  const ConvexDomain& domain = cone.domain();
  const Chart& chart = domain.chart();
  const int n1 = domain.ambient_dim();
  const VolumeModel model(cone, options.vinberg);
  auto lift = [&](const Vec& z) { return characteristic_point(model, chart.ray(z)); };
  PLSurfaceResult out;
  std::vector<Vec> chart_pts;
  std::vector<std::vector<int>> simplices;
  std::vector<std::array<int, 3>> tris;
  if (n1 == 2) {
    if (budget < 2) throw Error(ErrorCode::kApproximationFailure, "budget too small for a polyline");
    const Vec c = domain.interior_point();
    const Vec e = Vec::Unit(1, 0);
    const auto [lo, hi] = domain.line_interval(c, e);
    const double mid = c[0] + 0.5 * (lo + hi);
    for (int k = 0; k < budget; ++k) {
      const double u = (k + 0.5) / budget - 0.5;
      chart_pts.push_back(Vec::Constant(1, mid + options.ring_fraction * u * (hi - lo)));
    }
    for (int k = 0; k + 1 < budget; ++k) simplices.push_back({k, k + 1});
  } else if (n1 == 3) {
    int rings = 0;
    while (1 + 3 * (rings + 1) * (rings + 2) <= budget) ++rings;
    if (rings < 1) throw Error(ErrorCode::kApproximationFailure, "budget too small for a polar mesh (need >= 7)");
    Mesh2 mesh = polar_mesh(domain, rings, options.ring_fraction);
    chart_pts = mesh.chart;
    tris = mesh.tris;
  } else {
    throw Error(ErrorCode::kInvalidInput, "PL characteristic surfaces are built for ambient dimension 2 or 3");
  }
  std::vector<Vec> lifted;
  for (const auto& z : chart_pts) lifted.push_back(lift(z));
  if (n1 == 3) out.flips = lawson_flips(lifted, chart_pts, tris);

  Variates rng(options.seed);
  std::vector<Vec> current = lifted;
  for (out.jitter_rounds = 0;; ++out.jitter_rounds) {
    if (n1 == 3) {
      simplices.clear();
      for (const auto& t : tris) simplices.push_back({t[0], t[1], t[2]});
    }
    out.surface = SimplicialHypersurface(current, simplices);
    out.certificate = certify_generic_convex(out.surface);
    if (out.certificate.certified && out.certificate.global_sign == 1) break;
    if (out.jitter_rounds >= options.max_jitter_rounds) {
      throw Error(ErrorCode::kApproximationFailure,
                  "PL surface not certified after " + std::to_string(out.jitter_rounds) + " jitter rounds (" +
                      std::to_string(out.certificate.violations.size()) + " violations)");
    }
    // Radii-only jitter keeps the radial-section property.
    const double eta = 1e-9 * std::pow(4.0, out.jitter_rounds);
    for (size_t k = 0; k < current.size(); ++k) current[k] = lifted[k] * (1.0 + eta * (2.0 * rng.uniform() - 1.0));
    if (n1 == 3) out.flips += lawson_flips(current, chart_pts, tris);
  }
  for (int i = 0; i < static_cast<int>(out.surface.simplices().size()); ++i) {
    const Vec b = out.surface.simplex_matrix(i).rowwise().mean();
    const Vec exact = characteristic_point(model, b);
    out.max_radial_deviation = std::max(out.max_radial_deviation, std::abs(b.norm() - exact.norm()) / exact.norm());
  }
  return out;
}

}  // namespace pconvex
