#pragma once

// Convex polytopes in a Euclidean chart R^d: brute-force vertex and facet
// enumeration (fine up to d ~ 6 and a few dozen constraints), face
// triangulation into simplices, and closed-form simplex moments.

#include <optional>
#include <vector>

#include "pconvex/projgeom.hpp"

namespace pconvex {

// { z : normal . z <= offset } with |normal| = 1.
struct Halfspace {
  Vec normal;
  double offset = 0.0;

  double slack(const Vec& z) const { return offset - normal.dot(z); }
};

struct PolytopeHull {
  std::vector<Vec> vertices;
  std::vector<Halfspace> facets;
  // facet_vertices[j] lists (sorted) the vertices lying on facet j.
  std::vector<std::vector<int>> facet_vertices;

  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices.front().size()); }
};

// Columns are the d+1 vertices of a d-simplex.
using SimplexPoints = Mat;

// Affine dimension of a point set (-1 for the empty set).
int affine_rank(const std::vector<Vec>& points, double tol = 1e-10);

// Convex hull of a full-dimensional point set; interior and non-extreme
// points are dropped. Throws kNotProperlyConvex when the points span less
// than the full dimension.
PolytopeHull hull_from_points(const std::vector<Vec>& points, double tol = 1e-10);

struct UnboundedWitness {
  Vec direction;
};

// Vertices of { A z <= b }. Returns the hull, or the recession direction
// when the set is unbounded. Throws kNotProperlyConvex for empty or
// lower-dimensional sets.
PolytopeHull hull_from_halfspaces(const std::vector<Halfspace>& halfspaces,
                                  std::optional<UnboundedWitness>* unbounded = nullptr,
                                  double tol = 1e-10);

// Triangulation of the polytope into d-simplices (cone-from-barycenter over
// a recursive triangulation of the faces). Steiner points are barycenters.
std::vector<SimplexPoints> triangulate(const PolytopeHull& hull);

double simplex_volume(const SimplexPoints& s);

// Volume, first moment integral and raw second moment integral of a region.
struct RegionMoments {
  double volume = 0.0;
  Vec first;   // integral of z
  Mat second;  // integral of z z^T

  void accumulate(const RegionMoments& other);
};

RegionMoments simplex_moments(const SimplexPoints& s);
RegionMoments polytope_moments(const std::vector<SimplexPoints>& simplices);

// Interval of t with z + t*dir inside { slack >= 0 } for every halfspace.
std::pair<double, double> clip_line(const std::vector<Halfspace>& halfspaces, const Vec& z,
                                    const Vec& dir);

}  // namespace pconvex
