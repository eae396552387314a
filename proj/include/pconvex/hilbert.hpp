#pragma once

// Hilbert metric (with the factor 1/2, so the Klein disk is the hyperbolic
// plane of curvature -1), chord projections, geodesics and thin triangles.

#include <array>
#include <vector>

#include "pconvex/domain.hpp"

namespace pconvex {

// Projection onto a chord along the core of the pencil spanned by the
// supporting hyperplanes at its endpoints.
struct ChordProjection {
  Chord chord;
  DualFunctional h_plus;
  DualFunctional h_minus;
  ProjSubspace core;
};

ChordProjection chord_projection(const ConvexDomain& domain, const Vec& x, const Vec& y);

// Inputs are chart coordinates unless they are ProjPoints.
double distance(const ConvexDomain& domain, const Vec& x, const Vec& y);
double distance(const ConvexDomain& domain, const ProjPoint& x, const ProjPoint& y);

// k+1 chart points from x to y equally spaced in Hilbert arclength.
std::vector<Vec> geodesic(const ConvexDomain& domain, const Vec& x, const Vec& y, int k);

struct ProjectionResult {
  ProjPoint point;
  Vec chart;
  double condition = 0.0;  // 2-norm condition number of the splitting
};

ProjectionResult project_to_chord(const ConvexDomain& domain, const ChordProjection& proj,
                                  const ProjPoint& x);
ProjectionResult project_to_chord(const ConvexDomain& domain, const ChordProjection& proj,
                                  const Vec& x);

struct DeltaResult {
  double delta = 0.0;
  bool degenerate = false;
  // Side index and sample parameter realizing the maximum.
  int side = -1;
  double parameter = 0.0;
};

// Sampled lower bound for the thinness constant of the geodesic triangle
// with chart vertices t. Samples on each side follow the van der Corput
// sequence, so the sample sets are nested and the result is nondecreasing
// in m.
DeltaResult thin_triangle_delta(const ConvexDomain& domain, const std::array<Vec, 3>& t, int m = 64,
                                int threads = 1);

// van der Corput radical inverse in base 2.
double van_der_corput(unsigned index);

}  // namespace pconvex
