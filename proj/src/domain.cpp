#include "pconvex/domain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace pconvex {

std::string_view backend_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::kHPoly: return "hpoly";
    case BackendKind::kVPoly: return "vpoly";
    case BackendKind::kEllipsoid: return "ellipsoid";
    case BackendKind::kRadialGraph: return "radialgraph";
  }
  return "unknown";
}

std::string_view location_name(Location loc) {
  switch (loc) {
    case Location::kInside: return "inside";
    case Location::kBoundary: return "boundary";
    case Location::kOutside: return "outside";
  }
  return "unknown";
}

namespace {

std::string vec_json(const Vec& v) {
  std::ostringstream out;
  out.precision(17);
  out << "[";
  for (int i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "]";
  return out.str();
}

// Chart ellipsoid { z : q(h + F z) < 0 } of a Lorentzian quadratic form.
EllipsoidSpec quadric_to_ellipsoid(const Mat& form, const Chart& chart) {
  const Mat& f = chart.frame();
  const Vec& h = chart.pole();
  Mat q = form;
  Mat a = f.transpose() * q * f;
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (a + a.transpose()));
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    q = -q;
    a = -a;
    eig.compute(0.5 * (a + a.transpose()));
  }
  if (eig.eigenvalues().minCoeff() <= 1e-14 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::kNotProperlyConvex,
                "quadric image is not bounded in the chart (meets the hyperplane at infinity)");
  }
  const Vec b = f.transpose() * q * h;
  const double c = h.dot(q * h);
  const Mat a_inv = a.inverse();
  const Vec center = -a_inv * b;
  const double r2 = b.dot(a_inv * b) - c;
  if (!(r2 > 0.0)) throw Error(ErrorCode::kNotProperlyConvex, "quadric image is empty in the chart");
  Mat shape = r2 * a_inv;
  shape = 0.5 * (shape + shape.transpose());
  return {center, shape};
}

void check_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw Error(ErrorCode::kInvalidInput, std::string("non-finite ") + what);
}

}  // namespace

Vec chart_halfspace_functional(const Chart& chart, const Halfspace& h) {
  return h.offset * chart.pole() - chart.frame() * h.normal;
}

ConvexDomain ConvexDomain::hpoly(const Chart& chart, std::vector<Halfspace> halfspaces) {
  for (const auto& h : halfspaces) {
    if (h.normal.size() != chart.dim()) {
      throw Error(ErrorCode::kInvalidInput, "halfspace dimension does not match chart");
    }
  }
  std::optional<UnboundedWitness> witness;
  PolytopeHull hull;
  try {
    hull = hull_from_halfspaces(halfspaces, &witness);
  } catch (const Error& e) {
    if (witness) {
      throw Error(e.code(), e.what(), "{\"recession_direction\":" + vec_json(witness->direction) + "}");
    }
    throw;
  }
  ConvexDomain d;
  d.chart_ = chart;
  d.kind_ = BackendKind::kHPoly;
  d.halfspaces_ = hull.facets;
  d.interior_ = Vec::Zero(chart.dim());
  for (const auto& v : hull.vertices) d.interior_ += v;
  d.interior_ /= static_cast<double>(hull.vertices.size());
  d.simplices_ = std::make_shared<std::vector<SimplexPoints>>(triangulate(hull));
  d.hull_ = std::make_shared<PolytopeHull>(std::move(hull));
  return d;
}

ConvexDomain ConvexDomain::vpoly(const Chart& chart, std::vector<Vec> vertices) {
  for (const auto& v : vertices) {
    if (v.size() != chart.dim()) throw Error(ErrorCode::kInvalidInput, "vertex dimension does not match chart");
    check_finite(v, "vertex");
  }
  PolytopeHull hull = hull_from_points(vertices);
  ConvexDomain d;
  d.chart_ = chart;
  d.kind_ = BackendKind::kVPoly;
  d.halfspaces_ = hull.facets;
  d.interior_ = Vec::Zero(chart.dim());
  for (const auto& v : hull.vertices) d.interior_ += v;
  d.interior_ /= static_cast<double>(hull.vertices.size());
  d.simplices_ = std::make_shared<std::vector<SimplexPoints>>(triangulate(hull));
  d.hull_ = std::make_shared<PolytopeHull>(std::move(hull));
  return d;
}

ConvexDomain ConvexDomain::ellipsoid(const Chart& chart, Vec center, Mat shape) {
  const int n = chart.dim();
  if (center.size() != n || shape.rows() != n || shape.cols() != n) {
    throw Error(ErrorCode::kInvalidInput, "ellipsoid dimension does not match chart");
  }
  check_finite(center, "ellipsoid center");
  if (!shape.allFinite()) throw Error(ErrorCode::kInvalidInput, "non-finite ellipsoid shape");
  if ((shape - shape.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, shape.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::kInvalidInput, "ellipsoid shape matrix is not symmetric");
  }
  shape = 0.5 * (shape + shape.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(shape);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorCode::kNotProperlyConvex, "ellipsoid shape matrix is not positive definite");
  }
  auto data = std::make_shared<EllipsoidData>();
  data->center = center;
  data->shape = shape;
  data->shape_inv = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
                    eig.eigenvectors().transpose();
  data->min_axis = std::sqrt(eig.eigenvalues().minCoeff());
  data->max_axis = std::sqrt(eig.eigenvalues().maxCoeff());
  ConvexDomain d;
  d.chart_ = chart;
  d.kind_ = BackendKind::kEllipsoid;
  d.interior_ = center;
  d.ellipsoid_ = std::move(data);
  return d;
}

ConvexDomain ConvexDomain::radial_graph(const Chart& chart, Vec center, std::vector<Vec> directions,
                                        std::vector<double> radii, std::vector<std::vector<int>> faces) {
  const int n = chart.dim();
  if (center.size() != n) throw Error(ErrorCode::kInvalidInput, "radial-graph center dimension mismatch");
  check_finite(center, "radial-graph center");
  if (directions.size() != radii.size() || directions.size() < static_cast<size_t>(n + 1)) {
    throw Error(ErrorCode::kInvalidInput, "radial graph needs matching directions/radii (at least n+1)");
  }
  for (size_t i = 0; i < directions.size(); ++i) {
    if (directions[i].size() != n) throw Error(ErrorCode::kInvalidInput, "radial direction dimension mismatch");
    check_finite(directions[i], "radial direction");
    const double norm = directions[i].norm();
    if (!(norm > 0.0)) throw Error(ErrorCode::kInvalidInput, "zero radial direction");
    directions[i] /= norm;
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw Error(ErrorCode::kNotProperlyConvex, "radial graph radii must be positive and finite");
    }
  }
  if (faces.empty()) {
    if (n == 1) {
      for (int i = 0; i < static_cast<int>(directions.size()); ++i) faces.push_back({i});
    } else if (n == 2) {
      std::vector<int> order(directions.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::atan2(directions[a][1], directions[a][0]) < std::atan2(directions[b][1], directions[b][0]);
      });
      for (size_t i = 0; i < order.size(); ++i) {
        const int a = order[i], b = order[(i + 1) % order.size()];
        const double angle = std::atan2(directions[a][0] * directions[b][1] - directions[a][1] * directions[b][0],
                                        directions[a].dot(directions[b]));
        if (!(angle > 0.0) || angle >= std::numbers::pi) {
          throw Error(ErrorCode::kNotProperlyConvex, "radial directions leave a gap of angle >= pi",
                      "{\"gap_between\":[" + std::to_string(a) + "," + std::to_string(b) + "]}");
        }
        faces.push_back({a, b});
      }
    } else {
      throw Error(ErrorCode::kInvalidInput, "radial graphs with n >= 3 need explicit faces");
    }
  }
  auto data = std::make_shared<RadialGraphData>();
  data->center = center;
  data->directions = std::move(directions);
  data->radii = std::move(radii);
  data->faces = std::move(faces);
  const int count = static_cast<int>(data->directions.size());
  double scale = 1.0;
  for (int i = 0; i < count; ++i) scale = std::max(scale, data->vertex(i).cwiseAbs().maxCoeff());
  for (size_t f = 0; f < data->faces.size(); ++f) {
    const auto& face = data->faces[f];
    if (static_cast<int>(face.size()) != n) throw Error(ErrorCode::kInvalidInput, "radial face must have n vertices");
    for (int idx : face) {
      if (idx < 0 || idx >= count) throw Error(ErrorCode::kInvalidInput, "radial face index out of range");
    }
    Vec normal;
    if (n == 1) {
      normal = data->directions[face[0]];
    } else {
      Mat diffs(n - 1, n);
      for (int i = 1; i < n; ++i) diffs.row(i - 1) = (data->vertex(face[i]) - data->vertex(face[0])).transpose();
      const Mat ns = null_space(diffs, 1e-12);
      if (ns.cols() != 1) throw Error(ErrorCode::kNotProperlyConvex, "degenerate radial face");
      normal = ns.col(0);
    }
    const Vec p0 = data->vertex(face[0]);
    if (normal.dot(p0 - center) < 0.0) normal = -normal;
    if (normal.dot(p0 - center) <= 1e-12 * scale) {
      throw Error(ErrorCode::kNotProperlyConvex, "radial face plane passes through the center");
    }
    data->face_planes.push_back({normal, normal.dot(p0)});
  }
  for (size_t f = 0; f < data->face_planes.size(); ++f) {
    for (int k = 0; k < count; ++k) {
      if (data->face_planes[f].slack(data->vertex(k)) < -1e-9 * scale) {
        throw Error(ErrorCode::kNotProperlyConvex, "radial graph is not convex",
                    "{\"face\":" + std::to_string(f) + ",\"vertex\":" + std::to_string(k) + "}");
      }
    }
  }
  ConvexDomain d;
  d.chart_ = chart;
  d.kind_ = BackendKind::kRadialGraph;
  d.interior_ = center;
  d.halfspaces_ = data->face_planes;
  auto simplices = std::make_shared<std::vector<SimplexPoints>>();
  for (const auto& face : data->faces) {
    SimplexPoints s(n, n + 1);
    s.col(0) = center;
    for (int i = 0; i < n; ++i) s.col(i + 1) = data->vertex(face[i]);
    simplices->push_back(std::move(s));
  }
  d.simplices_ = std::move(simplices);
  d.radial_ = std::move(data);
  return d;
}

ConvexDomain ConvexDomain::build(const DomainSpec& spec) {
  return std::visit(
      [&](const auto& b) -> ConvexDomain {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HPolySpec>) {
          return hpoly(spec.chart, b.halfspaces);
        } else if constexpr (std::is_same_v<T, VPolySpec>) {
          return vpoly(spec.chart, b.vertices);
        } else if constexpr (std::is_same_v<T, EllipsoidSpec>) {
          return ellipsoid(spec.chart, b.center, b.shape);
        } else {
          return radial_graph(spec.chart, b.center, b.directions, b.radii, b.faces);
        }
      },
      spec.backend);
}

Containment ConvexDomain::contains(const Vec& z, double band) const {
  double margin = 0.0;
  if (kind_ == BackendKind::kEllipsoid) {
    const Vec d = z - ellipsoid_->center;
    margin = (1.0 - std::sqrt(std::max(0.0, d.dot(ellipsoid_->shape_inv * d)))) * ellipsoid_->min_axis;
  } else {
    margin = std::numeric_limits<double>::infinity();
    for (const auto& h : halfspaces_) margin = std::min(margin, h.slack(z));
  }
  Containment c;
  c.margin = margin;
  if (std::abs(margin) <= band) {
    c.location = Location::kBoundary;
  } else {
    c.location = margin > 0.0 ? Location::kInside : Location::kOutside;
  }
  return c;
}

Containment ConvexDomain::contains(const ProjPoint& p, double band) const {
  const double s = chart_.pole().dot(p.coords());
  // Representatives in the negative cone are outside (positive projective space).
  if (s <= kExactTol) return {Location::kOutside, -std::numeric_limits<double>::infinity()};
  return contains(chart_.to_chart(p), band);
}

std::pair<double, double> ConvexDomain::line_interval(const Vec& z, const Vec& dir) const {
  if (kind_ != BackendKind::kEllipsoid) return clip_line(halfspaces_, z, dir);
  const Vec d = z - ellipsoid_->center;
  const Mat& s = ellipsoid_->shape_inv;
  const double a = dir.dot(s * dir);
  const double b = dir.dot(s * d);
  const double c = d.dot(s * d) - 1.0;
  const double disc = b * b - a * c;
  if (!(a > 0.0) || disc < 0.0) return {1.0, -1.0};
  const double root = std::sqrt(disc);
  // Stable quadratic roots.
  const double q = -(b + std::copysign(root, b));
  double t1 = q / a;
  double t2 = q != 0.0 ? c / q : -t1;
  if (t1 > t2) std::swap(t1, t2);
  return {t1, t2};
}

double ConvexDomain::support_value(const Vec& u) const {
  switch (kind_) {
    case BackendKind::kEllipsoid:
      return u.dot(ellipsoid_->center) + std::sqrt(std::max(0.0, u.dot(ellipsoid_->shape * u)));
    case BackendKind::kRadialGraph: {
      double best = -std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < radial_->radii.size(); ++i) best = std::max(best, u.dot(radial_->vertex(static_cast<int>(i))));
      return best;
    }
    default: {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& v : hull_->vertices) best = std::max(best, u.dot(v));
      return best;
    }
  }
}

std::vector<Vec> ConvexDomain::frontier_normals(const Vec& b, double tol) const {
  std::vector<Vec> normals;
  if (kind_ == BackendKind::kEllipsoid) {
    const Vec g = ellipsoid_->shape_inv * (b - ellipsoid_->center);
    if (g.norm() > 0.0) normals.push_back(g.normalized());
    return normals;
  }
  for (const auto& h : halfspaces_) {
    if (std::abs(h.slack(b)) <= tol) normals.push_back(h.normal);
  }
  return normals;
}

const PolytopeHull& ConvexDomain::hull() const {
  if (!hull_) throw Error(ErrorCode::kInvalidInput, "domain backend is not a polytope");
  return *hull_;
}

const EllipsoidData& ConvexDomain::ellipsoid_data() const {
  if (!ellipsoid_) throw Error(ErrorCode::kInvalidInput, "domain backend is not an ellipsoid");
  return *ellipsoid_;
}

const RadialGraphData& ConvexDomain::radial_data() const {
  if (!radial_) throw Error(ErrorCode::kInvalidInput, "domain backend is not a radial graph");
  return *radial_;
}

const std::vector<SimplexPoints>& ConvexDomain::triangulation() const {
  if (!simplices_) throw Error(ErrorCode::kInvalidInput, "ellipsoid domains have no triangulation");
  return *simplices_;
}

const std::vector<Halfspace>& ConvexDomain::halfspaces() const {
  if (kind_ == BackendKind::kEllipsoid) throw Error(ErrorCode::kInvalidInput, "ellipsoid domains have no facets");
  return halfspaces_;
}

Mat ConvexDomain::quadric() const {
  const EllipsoidData& e = ellipsoid_data();
  const Vec& h = chart_.pole();
  const Mat g = chart_.frame().transpose() - e.center * h.transpose();
  Mat m = g.transpose() * e.shape_inv * g - h * h.transpose();
  return 0.5 * (m + m.transpose());
}

std::vector<Vec> ConvexDomain::cone_rays() const {
  std::vector<Vec> rays;
  if (kind_ == BackendKind::kRadialGraph) {
    for (size_t i = 0; i < radial_->radii.size(); ++i) rays.push_back(chart_.ray(radial_->vertex(static_cast<int>(i))));
  } else if (hull_) {
    for (const auto& v : hull_->vertices) rays.push_back(chart_.ray(v));
  } else {
    throw Error(ErrorCode::kInvalidInput, "ellipsoid cones have no extreme-ray list");
  }
  return rays;
}

ConvexDomain ConvexDomain::map_homogeneous(const Mat& a, const Chart& target) const {
  auto image_chart = [&](const Vec& z, double& sign) {
    const Vec w = a * chart_.ray(z);
    const double s = target.pole().dot(w);
    if (std::abs(s) <= 1e-12 * w.norm()) {
      throw Error(ErrorCode::kNotProperlyConvex, "image meets the target chart's hyperplane at infinity");
    }
    if (sign == 0.0) sign = s > 0 ? 1.0 : -1.0;
    if (sign * s < 0.0) {
      throw Error(ErrorCode::kNotProperlyConvex, "image crosses the target chart's hyperplane at infinity");
    }
    return Vec(target.frame().transpose() * w / s);
  };
  double sign = 0.0;
  switch (kind_) {
    case BackendKind::kEllipsoid: {
      const Mat a_inv = a.inverse();
      const Mat form = a_inv.transpose() * quadric() * a_inv;
      EllipsoidSpec e = quadric_to_ellipsoid(form, target);
      return ellipsoid(target, e.center, e.shape);
    }
    case BackendKind::kRadialGraph: {
      const Vec c = image_chart(radial_->center, sign);
      std::vector<Vec> dirs;
      std::vector<double> radii;
      for (size_t i = 0; i < radial_->radii.size(); ++i) {
        const Vec p = image_chart(radial_->vertex(static_cast<int>(i)), sign) - c;
        radii.push_back(p.norm());
        dirs.push_back(p / p.norm());
      }
      return radial_graph(target, c, dirs, radii, radial_->faces);
    }
    default: {
      std::vector<Vec> verts;
      for (const auto& v : hull_->vertices) verts.push_back(image_chart(v, sign));
      ConvexDomain d = vpoly(target, verts);
      d.kind_ = kind_;
      return d;
    }
  }
}

ConvexDomain ConvexDomain::transformed(const ProjTransform& a) const {
  const Vec pole = a.matrix().inverse().transpose() * chart_.pole();
  return map_homogeneous(a.matrix(), Chart(DualFunctional(pole)));
}

ConvexDomain ConvexDomain::transformed(const ProjTransform& a, const Chart& target) const {
  return map_homogeneous(a.matrix(), target);
}

ConvexDomain ConvexDomain::rechart(const Chart& target) const {
  return map_homogeneous(Mat::Identity(ambient_dim(), ambient_dim()), target);
}

ConvexDomain ConvexDomain::affine_image(const Mat& lin, const Vec& shift) const {
  const int n = dim();
  Mat m = Mat::Identity(n + 1, n + 1);
  m.topLeftCorner(n, n) = lin;
  m.topRightCorner(n, 1) = shift;
  return map_homogeneous(chart_.from_chart_basis(m), chart_);
}

DomainSpec ConvexDomain::spec() const {
  DomainSpec s;
  s.chart = chart_;
  switch (kind_) {
    case BackendKind::kHPoly: s.backend = HPolySpec{halfspaces_}; break;
    case BackendKind::kVPoly: s.backend = VPolySpec{hull_->vertices}; break;
    case BackendKind::kEllipsoid: s.backend = EllipsoidSpec{ellipsoid_->center, ellipsoid_->shape}; break;
    case BackendKind::kRadialGraph:
      s.backend = RadialGraphSpec{radial_->center, radial_->directions, radial_->radii, radial_->faces};
      break;
  }
  return s;
}

std::vector<Vec> ConvexDomain::boundary_samples(int count) const {
  std::vector<Vec> pts;
  const int n = dim();
  if (n == 2 && kind_ == BackendKind::kEllipsoid) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(ellipsoid_->shape);
    const Mat root = eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal();
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * k / count;
      Vec u(2);
      u << std::cos(t), std::sin(t);
      pts.push_back(ellipsoid_->center + root * u);
    }
    return pts;
  }
  if (n == 2) {
    std::vector<Vec> verts;
    if (kind_ == BackendKind::kRadialGraph) {
      for (size_t i = 0; i < radial_->radii.size(); ++i) verts.push_back(radial_->vertex(static_cast<int>(i)));
    } else {
      verts = hull_->vertices;
    }
    const Vec c = interior_;
    std::sort(verts.begin(), verts.end(), [&](const Vec& a, const Vec& b) {
      return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
    });
    return verts;
  }
  for (const auto& u : sample_directions(n, count)) {
    const auto [lo, hi] = line_interval(interior_, u);
    (void)lo;
    pts.push_back(interior_ + hi * u);
  }
  return pts;
}

bool ConvexCone::contains(const Vec& w) const {
  const double s = domain_.chart().pole().dot(w);
  if (!(s > 0.0)) return false;
  return domain_.contains(Vec(domain_.chart().frame().transpose() * w / s)).location == Location::kInside;
}

double ConvexCone::dual_margin(const Vec& v) const {
  const Chart& chart = domain_.chart();
  return v.dot(chart.pole()) - domain_.support_value(-chart.frame().transpose() * v);
}

bool ConvexCone::in_dual(const Vec& v) const { return dual_margin(v) > 1e-14 * v.norm(); }

ProperConvexityCertificate validate(const DomainSpec& spec) { return validate(ConvexDomain::build(spec)); }

ProperConvexityCertificate validate(const ConvexDomain& domain) {
  double radius = 0.0;
  switch (domain.kind()) {
    case BackendKind::kEllipsoid:
      radius = domain.ellipsoid_data().center.norm() + domain.ellipsoid_data().max_axis;
      break;
    case BackendKind::kRadialGraph:
      for (size_t i = 0; i < domain.radial_data().radii.size(); ++i) {
        radius = std::max(radius, domain.radial_data().vertex(static_cast<int>(i)).norm());
      }
      break;
    default:
      for (const auto& v : domain.hull().vertices) radius = std::max(radius, v.norm());
  }
  ProperConvexityCertificate cert;
  cert.hyperplane = domain.chart().at_infinity();
  cert.bounding_radius = radius;
  cert.margin = radius > 0.0 ? 1.0 / radius : std::numeric_limits<double>::infinity();
  return cert;
}

Containment contains(const ConvexDomain& domain, const ProjPoint& p) { return domain.contains(p); }

Chord chord(const ConvexDomain& domain, const Vec& x, const Vec& y) {
  const double scale = std::max({1.0, x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff()});
  if ((x - y).norm() <= 1e-14 * scale) throw Error(ErrorCode::kDegenerateChord, "chord through coincident points");
  if (domain.contains(x).location != Location::kInside || domain.contains(y).location != Location::kInside) {
    throw Error(ErrorCode::kInvalidInput, "chord endpoints must lie inside the domain");
  }
  const Vec dir = y - x;
  const auto [lo, hi] = domain.line_interval(x, dir);
  Chord c;
  c.chart_minus = x + lo * dir;
  c.chart_plus = x + hi * dir;
  c.a_minus = domain.lift(c.chart_minus);
  c.a_plus = domain.lift(c.chart_plus);
  return c;
}

Chord chord(const ConvexDomain& domain, const ProjPoint& x, const ProjPoint& y) {
  return chord(domain, domain.to_chart(x), domain.to_chart(y));
}

std::vector<DualFunctional> supporting_facets(const ConvexDomain& domain, const Vec& b) {
  const Containment c = domain.contains(b);
  if (std::abs(c.margin) > kFrontierTol) {
    throw Error(ErrorCode::kNotOnFrontier, "point is not on the frontier (margin " + std::to_string(c.margin) + ")");
  }
  std::vector<DualFunctional> result;
  for (const auto& n : domain.frontier_normals(b)) {
    result.emplace_back(chart_halfspace_functional(domain.chart(), {n, n.dot(b)}));
  }
  if (result.empty()) throw Error(ErrorCode::kNotOnFrontier, "no supporting facet through point");
  return result;
}

DualFunctional support(const ConvexDomain& domain, const Vec& b) {
  const Containment c = domain.contains(b);
  if (std::abs(c.margin) > kFrontierTol) {
    throw Error(ErrorCode::kNotOnFrontier, "point is not on the frontier (margin " + std::to_string(c.margin) + ")");
  }
  const auto normals = domain.frontier_normals(b);
  if (normals.empty()) throw Error(ErrorCode::kNotOnFrontier, "no supporting facet through point");
  Vec avg = Vec::Zero(domain.dim());
  for (const auto& n : normals) avg += n;
  avg.normalize();
  return DualFunctional(chart_halfspace_functional(domain.chart(), {avg, avg.dot(b)}));
}

DualFunctional support(const ConvexDomain& domain, const ProjPoint& b) {
  return support(domain, domain.to_chart(b));
}

ConvexDomain dual_domain(const ConvexDomain& domain) {
  const Chart& chart = domain.chart();
  const Chart dual_chart(DualFunctional(chart.ray(domain.interior_point())));
  switch (domain.kind()) {
    case BackendKind::kEllipsoid: {
      const EllipsoidSpec e = quadric_to_ellipsoid(domain.quadric().inverse(), dual_chart);
      return ConvexDomain::ellipsoid(dual_chart, e.center, e.shape);
    }
    case BackendKind::kRadialGraph: {
      const RadialGraphData& r = domain.radial_data();
      const Vec dual_center = dual_chart.to_chart(chart.pole());
      const Vec base = dual_chart.ray(dual_center);
      const auto rays = domain.cone_rays();
      std::vector<double> radii;
      for (const auto& u : r.directions) {
        const Vec step = dual_chart.frame() * u;
        double t = std::numeric_limits<double>::infinity();
        for (const auto& w : rays) {
          const double alpha = base.dot(w), beta = step.dot(w);
          if (beta < 0.0) t = std::min(t, -alpha / beta);
        }
        if (!std::isfinite(t)) throw Error(ErrorCode::kNotProperlyConvex, "dual radial graph is unbounded");
        radii.push_back(t);
      }
      return ConvexDomain::radial_graph(dual_chart, dual_center, r.directions, radii, r.faces);
    }
    default: {
      std::vector<Vec> verts;
      for (const auto& f : domain.hull().facets) {
        verts.push_back(dual_chart.to_chart(chart_halfspace_functional(chart, f)));
      }
      ConvexDomain d = ConvexDomain::vpoly(dual_chart, verts);
      return d;
    }
  }
}

double duality_residual(const ConvexDomain& domain, int samples) {
  const ConvexDomain twice = dual_domain(dual_domain(domain)).rechart(domain.chart());
  double residual = 0.0;
  for (const auto& u : sample_directions(domain.dim(), samples)) {
    residual = std::max(residual, std::abs(twice.support_value(u) - domain.support_value(u)));
  }
  return residual;
}

std::vector<Flat> boundary_flats(const ConvexDomain& domain, double tol) {
  std::vector<Flat> flats;
  switch (domain.kind()) {
    case BackendKind::kEllipsoid:
      return flats;
    case BackendKind::kRadialGraph: {
      const RadialGraphData& r = domain.radial_data();
      std::vector<int> group(r.faces.size(), -1);
      int groups = 0;
      for (size_t f = 0; f < r.faces.size(); ++f) {
        if (group[f] >= 0) continue;
        group[f] = groups;
        for (size_t g = f + 1; g < r.faces.size(); ++g) {
          if (group[g] < 0 && r.face_planes[f].normal.dot(r.face_planes[g].normal) > 1.0 - tol &&
              std::abs(r.face_planes[f].offset - r.face_planes[g].offset) <= tol) {
            group[g] = groups;
          }
        }
        ++groups;
      }
      for (int gi = 0; gi < groups; ++gi) {
        std::vector<int> ids;
        for (size_t f = 0; f < r.faces.size(); ++f) {
          if (group[f] == gi) ids.insert(ids.end(), r.faces[f].begin(), r.faces[f].end());
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        Flat flat;
        for (int i : ids) flat.vertices.push_back(r.vertex(i));
        if (flat.vertices.size() > 1) flats.push_back(std::move(flat));
      }
      return flats;
    }
    default: {
      const PolytopeHull& hull = domain.hull();
      for (const auto& fv : hull.facet_vertices) {
        Flat flat;
        for (int i : fv) flat.vertices.push_back(hull.vertices[i]);
        flats.push_back(std::move(flat));
      }
      return flats;
    }
  }
}

std::vector<Vec> sample_directions(int dim, int count) {
  std::vector<Vec> dirs;
  if (dim == 1) {
    dirs.push_back(Vec::Constant(1, 1.0));
    dirs.push_back(Vec::Constant(1, -1.0));
    return dirs;
  }
  if (dim == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * (k + 0.5) / count;
      Vec u(2);
      u << std::cos(t), std::sin(t);
      dirs.push_back(u);
    }
    return dirs;
  }
  if (dim == 3) {
    // Fibonacci sphere.
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec u(3);
      u << r * std::cos(golden * k), r * std::sin(golden * k), z;
      dirs.push_back(u);
    }
    return dirs;
  }
  std::mt19937_64 rng(0x5eedULL);
  for (int k = 0; k < count; ++k) {
    Vec u(dim);
    for (int i = 0; i < dim; ++i) {
      const double a = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
      const double b = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
      u[i] = std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * std::numbers::pi * b);
    }
    dirs.push_back(u.normalized());
  }
  return dirs;
}

}  // namespace pconvex
