#pragma once

// Flat-simplex hypersurfaces in a cone of R^{n+1}: radial sections, the
// local convexity determinant test, perturbation stability, outwardness,
// PL approximations of the characteristic hypersurface and the log-contour
// function h(x) = -t for x in e^t |S|.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pconvex/domain.hpp"
#include "pconvex/vinberg.hpp"

namespace pconvex {

class SimplicialHypersurface {
 public:
  SimplicialHypersurface() = default;
  // Each simplex lists n+1 vertex indices (n = ambient dimension - 1).
  SimplicialHypersurface(std::vector<Vec> vertices, std::vector<std::vector<int>> simplices);

  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& simplices() const { return simplices_; }
  int ambient_dim() const { return vertices_.empty() ? 0 : static_cast<int>(vertices_.front().size()); }
  // Simplices sharing each codimension-one face (sorted index tuple).
  const std::map<std::vector<int>, std::vector<int>>& adjacency() const { return adjacency_; }
  bool closed() const;
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  // Columns are the vertices of simplex s, in stored order.
  Mat simplex_matrix(int s) const;
  double scale() const;

  SimplicialHypersurface scaled(double factor) const;
  SimplicialHypersurface mapped(const Mat& a) const;
  SimplicialHypersurface with_vertices(std::vector<Vec> vertices) const;

 private:
  std::vector<Vec> vertices_;
  std::vector<std::vector<int>> simplices_;
  std::map<std::vector<int>, std::vector<int>> adjacency_;
  std::vector<bool> boundary_vertex_;
};

struct RadialSectionResult {
  bool ok = false;
  std::vector<int> transversality_failures;  // simplices whose hull holds 0
  std::vector<int> overlaps;                 // simplices whose cones overlap
  std::vector<int> orientation_failures;     // inconsistent det(sigma) sign
};

RadialSectionResult radial_section_check(const SimplicialHypersurface& s);

struct VertexConvexity {
  int sign = 0;          // +1 outward convex, -1 concave, 0 inconsistent
  double margin = 0.0;   // min |det|
  std::vector<double> determinants;  // raw det(sigma_0 - u, ..., sigma_n - u)
};

// Throws kCoplanarity when a determinant vanishes. With all_link false only
// the vertices of simplices adjacent to sigma inside the star are used.
VertexConvexity vertex_convexity(const SimplicialHypersurface& s, int v, bool all_link = true);

struct Violation {
  std::string kind;  // "vertex", "coplanar", "transversality", "overlap"
  int index = -1;    // vertex or simplex index
  std::string detail;
};

struct ConvexityCertificate {
  bool certified = false;
  int global_sign = 0;
  double margin = 0.0;
  std::vector<Violation> violations;
};

ConvexityCertificate certify_generic_convex(const SimplicialHypersurface& s, bool all_link = true);

struct PerturbationReport {
  double epsilon = 0.0;
  double lipschitz_bound = 0.0;
  double margin = 0.0;
  int trials = 0;
  int passed = 0;
  bool fails_at_10x = false;
};

PerturbationReport perturbation_radius(const SimplicialHypersurface& s, std::uint64_t seed = 1, int trials = 100);

struct OutwardResult {
  bool outward = false;
  double margin = 0.0;
};

OutwardResult outward_check(const SimplicialHypersurface& s, double t);

// -log of the scaling carrying x onto |S|.
double log_contour_value(const SimplicialHypersurface& s, const Vec& x);

struct PLSurfaceResult {
  SimplicialHypersurface surface;
  ConvexityCertificate certificate;
  double max_radial_deviation = 0.0;  // relative, at simplex barycenter rays
  int flips = 0;
  int jitter_rounds = 0;
};

struct PLSurfaceOptions {
  VinbergOptions vinberg;
  std::uint64_t seed = 1;
  int max_jitter_rounds = 20;
  double ring_fraction = 0.9;  // outermost sample ring, as a fraction of the radial extent
};

PLSurfaceResult pl_characteristic_surface(const ConvexCone& cone, int budget, const PLSurfaceOptions& options = {});

}  // namespace pconvex
