#pragma once

// Automorphisms of properly-convex domains: membership, hyperbolic
// dynamics, orbits and Dirichlet-type polyhedral fundamental domains.

#include <string>
#include <vector>

#include "pconvex/domain.hpp"
#include "pconvex/vinberg.hpp"

namespace pconvex {

struct AutomorphismCheck {
  bool holds = false;
  double residual = 0.0;
};

AutomorphismCheck is_automorphism(const ConvexDomain& domain, const ProjTransform& a, double tol = 1e-9);

struct HyperbolicData {
  ProjPoint a_plus;
  ProjPoint a_minus;
  Chord axis;
  double translation_length = 0.0;     // infimum of d(x, Ax) along the axis
  double eigenvalue_length = 0.0;      // 1/2 log(lambda_max / lambda_min)
  double eigenvalue_gap = 0.0;         // |lambda_1| / |lambda_2|
  double power_iteration_residual = 0.0;
};

HyperbolicData fixed_point_dynamics(const ConvexDomain& domain, const ProjTransform& a);

struct OrbitPoint {
  ProjPoint point;
  std::string word;  // letters a, b, ... and A, B, ... for inverses
};

// Images of seed under reduced words of length <= max_length, in order
// (g1, g1^-1, g2, ...) within each length, deduplicated up to sign.
std::vector<OrbitPoint> orbit(const std::vector<ProjTransform>& gens, const ProjPoint& seed, int max_length);

struct ReducedWord {
  std::vector<int> letters;  // 2i: generator i, 2i+1: its inverse
  Mat matrix;
  std::string label;
};

std::vector<ReducedWord> reduced_words(const std::vector<ProjTransform>& gens, int max_length);
std::string inverse_label(const std::string& label);

struct DirichletFacet {
  Halfspace halfspace;  // in slice coordinates s
  std::string word;     // "cone" for facets of the cone itself
};

// Q = { y on the slice phi = 1 : psi_gamma(y) >= 1 for all words } in slice
// coordinates y = basepoint + basis * s.
struct DirichletDomain {
  Vec functional;  // phi, with phi(basepoint) = 1
  Vec basepoint;
  Mat basis;       // orthonormal, spans ker phi
  std::vector<DirichletFacet> facets;  // active facets only
  std::vector<Vec> vertices;           // slice coordinates (bounded case)
  bool bounded = false;
  bool stable = false;                 // facet words unchanged from L-1 to L

  Vec lift(const Vec& s) const { return basepoint + basis * s; }
};

DirichletDomain dirichlet_domain(const ConvexCone& cone, const std::vector<ProjTransform>& gens, const Vec& x,
                                 int max_length, const VinbergOptions& options = {});

}  // namespace pconvex
