#pragma once

// Properly-convex open sets presented in an affine chart, with four
// backends: H-polytopes, V-polytopes, ellipsoids and radial graphs
// (star-shaped PL hypersurfaces over a triangulated sphere of directions).

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "pconvex/polytope.hpp"
#include "pconvex/projgeom.hpp"

namespace pconvex {

enum class BackendKind { kHPoly, kVPoly, kEllipsoid, kRadialGraph };

std::string_view backend_name(BackendKind kind);

struct HPolySpec {
  std::vector<Halfspace> halfspaces;
};

struct VPolySpec {
  std::vector<Vec> vertices;
};

// { z : (z - center)^T shape^{-1} (z - center) < 1 }; semi-axes are the
// square roots of the eigenvalues of shape.
struct EllipsoidSpec {
  Vec center;
  Mat shape;
};

// Boundary vertices center + radii[i] * directions[i]; faces are n-tuples of
// vertex indices triangulating the sphere of directions. For n <= 2 faces
// may be left empty and are generated from the angular order.
struct RadialGraphSpec {
  Vec center;
  std::vector<Vec> directions;
  std::vector<double> radii;
  std::vector<std::vector<int>> faces;
};

struct DomainSpec {
  Chart chart;
  std::variant<HPolySpec, VPolySpec, EllipsoidSpec, RadialGraphSpec> backend;
};

// cl(Omega) misses `hyperplane`; in the chart cl(Omega) sits inside the ball
// of radius bounding_radius about the chart origin, so every closure point
// makes angle at least atan(margin) with the hyperplane (margin = 1/radius).
struct ProperConvexityCertificate {
  DualFunctional hyperplane;
  double bounding_radius = 0.0;
  double margin = 0.0;
};

enum class Location { kInside, kBoundary, kOutside };

std::string_view location_name(Location loc);

struct Containment {
  Location location = Location::kOutside;
  double margin = 0.0;  // positive inside
};

struct EllipsoidData {
  Vec center;
  Mat shape;
  Mat shape_inv;
  double min_axis = 0.0;
  double max_axis = 0.0;
};

struct RadialGraphData {
  Vec center;
  std::vector<Vec> directions;
  std::vector<double> radii;
  std::vector<std::vector<int>> faces;
  std::vector<Halfspace> face_planes;  // outward, through the face vertices

  Vec vertex(int i) const { return center + radii[i] * directions[i]; }
};

struct Flat {
  std::vector<Vec> vertices;  // chart coordinates
};

class ConvexDomain {
 public:
  // Validating constructors. Throw kNotProperlyConvex (with a JSON witness)
  // for unbounded, empty or non-convex data.
  static ConvexDomain build(const DomainSpec& spec);
  static ConvexDomain hpoly(const Chart& chart, std::vector<Halfspace> halfspaces);
  static ConvexDomain vpoly(const Chart& chart, std::vector<Vec> vertices);
  static ConvexDomain ellipsoid(const Chart& chart, Vec center, Mat shape);
  static ConvexDomain radial_graph(const Chart& chart, Vec center, std::vector<Vec> directions,
                                   std::vector<double> radii,
                                   std::vector<std::vector<int>> faces = {});

  BackendKind kind() const { return kind_; }
  bool is_polytope() const { return kind_ == BackendKind::kHPoly || kind_ == BackendKind::kVPoly; }
  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  int ambient_dim() const { return chart_.ambient_dim(); }

  const Vec& interior_point() const { return interior_; }
  // Cone-side representative of a chart point.
  ProjPoint lift(const Vec& z) const { return chart_.from_chart(z); }
  Vec to_chart(const ProjPoint& p) const { return chart_.to_chart(p); }

  Containment contains(const Vec& z, double band = kBoundaryBand) const;
  Containment contains(const ProjPoint& p, double band = kBoundaryBand) const;

  // {t : z + t*dir in cl(Omega)} for z in cl(Omega); empty pair (1,-1) if
  // the line misses the closure.
  std::pair<double, double> line_interval(const Vec& z, const Vec& dir) const;
  // sup over cl(Omega) of <u, z>.
  double support_value(const Vec& u) const;
  // Outward normals (unit, chart) of supporting hyperplanes at a frontier
  // point b: all facets through b for polytopes, the tangent for ellipsoids.
  std::vector<Vec> frontier_normals(const Vec& b, double tol = kFrontierTol) const;

  const PolytopeHull& hull() const;
  const EllipsoidData& ellipsoid_data() const;
  const RadialGraphData& radial_data() const;
  // Chart simplices covering Omega (polytopes and radial graphs).
  const std::vector<SimplexPoints>& triangulation() const;
  // Homogeneous quadratic form M with C = { w : w^T M w < 0, <h, w> > 0 }.
  Mat quadric() const;
  // Extreme rays h + F v of the cone (polytopes, radial-graph vertices).
  std::vector<Vec> cone_rays() const;
  // Bounded-below halfspaces describing cl(Omega) exactly (polytopes and
  // radial graphs).
  const std::vector<Halfspace>& halfspaces() const;

  // Image under A; the result uses the chart with pole A^{-T} h.
  ConvexDomain transformed(const ProjTransform& a) const;
  // Image under A expressed in `target`; throws kNotProperlyConvex when the
  // image closure meets the target's hyperplane at infinity.
  ConvexDomain transformed(const ProjTransform& a, const Chart& target) const;
  ConvexDomain rechart(const Chart& target) const;
  // Image under the chart-affine map z -> lin * z + shift.
  ConvexDomain affine_image(const Mat& lin, const Vec& shift) const;

  DomainSpec spec() const;
  // Boundary polyline / sample points (chart) used for figures.
  std::vector<Vec> boundary_samples(int count) const;

 private:
  ConvexDomain() = default;
  // Maps the defining points/forms through a homogeneous matrix into target.
  ConvexDomain map_homogeneous(const Mat& a, const Chart& target) const;

  Chart chart_;
  BackendKind kind_ = BackendKind::kVPoly;
  Vec interior_;
  std::shared_ptr<const PolytopeHull> hull_;
  std::shared_ptr<const std::vector<SimplexPoints>> simplices_;
  std::shared_ptr<const EllipsoidData> ellipsoid_;
  std::shared_ptr<const RadialGraphData> radial_;
  std::vector<Halfspace> halfspaces_;
};

// Cone over a domain: C = { t (h + F z) : t > 0, z in Omega }.
class ConvexCone {
 public:
  explicit ConvexCone(ConvexDomain domain) : domain_(std::move(domain)) {}

  const ConvexDomain& domain() const { return domain_; }
  int ambient_dim() const { return domain_.ambient_dim(); }
  // True when w lies in the open cone.
  bool contains(const Vec& w) const;
  // True when v is positive on cl(C) minus the origin (v in the dual cone).
  bool in_dual(const Vec& v) const;
  // min over cl(Omega) of <v, h + F z> (nonpositive iff v outside C*).
  double dual_margin(const Vec& v) const;

 private:
  ConvexDomain domain_;
};

struct Chord {
  ProjPoint a_minus;
  ProjPoint a_plus;
  Vec chart_minus;
  Vec chart_plus;
};

ProperConvexityCertificate validate(const DomainSpec& spec);
ProperConvexityCertificate validate(const ConvexDomain& domain);

Containment contains(const ConvexDomain& domain, const ProjPoint& p);

// Frontier points of the line through x and y, oriented so x -> y points
// toward a_plus.
Chord chord(const ConvexDomain& domain, const ProjPoint& x, const ProjPoint& y);
Chord chord(const ConvexDomain& domain, const Vec& x, const Vec& y);

// Supporting hyperplane at a frontier point, oriented positive on Omega. At a
// polytope vertex the normalized average of the incident facet normals.
DualFunctional support(const ConvexDomain& domain, const ProjPoint& b);
DualFunctional support(const ConvexDomain& domain, const Vec& b);
// All supporting facet hyperplanes through b (the polytope normal cone's
// extreme directions); a single element for smooth points.
std::vector<DualFunctional> supporting_facets(const ConvexDomain& domain, const Vec& b);

// Functional b*h - F*a vanishing on the chart hyperplane a.z = b.
Vec chart_halfspace_functional(const Chart& chart, const Halfspace& h);

ConvexDomain dual_domain(const ConvexDomain& domain);
// max over sample directions of |support(Omega**) - support(Omega)| after
// re-charting the double dual into Omega's chart.
double duality_residual(const ConvexDomain& domain, int samples = 64);

std::vector<Flat> boundary_flats(const ConvexDomain& domain, double tol = kMatrixTol);

// Unit directions used for support-function comparisons (deterministic).
std::vector<Vec> sample_directions(int dim, int count);

}  // namespace pconvex
