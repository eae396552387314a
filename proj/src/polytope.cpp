#include "pconvex/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace pconvex {

namespace {

double point_scale(const std::vector<Vec>& points) {
  double scale = 1.0;
  for (const auto& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  return scale;
}

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k > n || k <= 0) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool same_halfspace(const Halfspace& a, const Halfspace& b, double tol) {
  return a.normal.dot(b.normal) > 1.0 - 1e-9 && std::abs(a.offset - b.offset) <= tol;
}

}  // namespace

int affine_rank(const std::vector<Vec>& points, double tol) {
  if (points.empty()) return -1;
  if (points.size() == 1) return 0;
  const int d = static_cast<int>(points.front().size());
  Mat diffs(d, static_cast<int>(points.size()) - 1);
  for (size_t i = 1; i < points.size(); ++i) diffs.col(static_cast<int>(i) - 1) = points[i] - points[0];
  const double scale = std::max(1.0, diffs.cwiseAbs().maxCoeff());
  Eigen::JacobiSVD<Mat> svd(diffs);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > tol * scale) ++rank;
  }
  return rank;
}

PolytopeHull hull_from_points(const std::vector<Vec>& points, double tol) {
  if (points.empty()) throw Error(ErrorCode::kNotProperlyConvex, "empty vertex list");
  const int d = static_cast<int>(points.front().size());
  for (const auto& p : points) {
    if (p.size() != d) throw Error(ErrorCode::kInvalidInput, "vertices of mixed dimension");
    if (!p.allFinite()) throw Error(ErrorCode::kInvalidInput, "non-finite vertex");
  }
  if (affine_rank(points, tol) < d) {
    throw Error(ErrorCode::kNotProperlyConvex, "vertices do not span the chart (empty interior)");
  }
  const double scale = point_scale(points);
  const double eps = tol * scale;
  const int n = static_cast<int>(points.size());

  std::vector<Halfspace> facets;
  if (d == 1) {
    double lo = points[0][0], hi = points[0][0];
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    facets.push_back({Vec::Constant(1, 1.0), hi});
    facets.push_back({Vec::Constant(1, -1.0), -lo});
  } else {
    for_each_combination(n, d, [&](const std::vector<int>& idx) {
      Mat diffs(d - 1, d);
      for (int i = 1; i < d; ++i) diffs.row(i - 1) = (points[idx[i]] - points[idx[0]]).transpose();
      Eigen::JacobiSVD<Mat> svd(diffs, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      if (sv.size() < d - 1 || sv[d - 2] <= tol * std::max(1.0, sv[0])) return;
      Vec normal = svd.matrixV().col(d - 1);
      normal.normalize();
      const double offset = normal.dot(points[idx[0]]);
      bool below = true, above = true;
      for (const auto& p : points) {
        const double s = normal.dot(p) - offset;
        if (s > eps) below = false;
        if (s < -eps) above = false;
      }
      if (!below && !above) return;
      Halfspace h = below ? Halfspace{normal, offset} : Halfspace{-normal, -offset};
      for (const auto& f : facets) {
        if (same_halfspace(f, h, 10 * eps)) return;
      }
      facets.push_back(std::move(h));
    });
  }

  // A point is a vertex iff the normals of the facets through it span R^d.
  std::vector<std::vector<int>> incident(n);
  for (int j = 0; j < static_cast<int>(facets.size()); ++j) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(facets[j].slack(points[i])) <= 10 * eps) incident[i].push_back(j);
    }
  }
  PolytopeHull hull;
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(incident[i].size()) < d) continue;
    Mat normals(static_cast<int>(incident[i].size()), d);
    for (int r = 0; r < normals.rows(); ++r) normals.row(r) = facets[incident[i][r]].normal.transpose();
    Eigen::JacobiSVD<Mat> svd(normals);
    if (svd.singularValues()[d - 1] <= 1e-9) continue;
    bool duplicate = false;
    for (size_t k = 0; k < hull.vertices.size(); ++k) {
      if ((hull.vertices[k] - points[i]).norm() <= 10 * eps) {
        remap[i] = static_cast<int>(k);
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    remap[i] = static_cast<int>(hull.vertices.size());
    hull.vertices.push_back(points[i]);
  }
  hull.facets = facets;
  hull.facet_vertices.assign(facets.size(), {});
  for (int j = 0; j < static_cast<int>(facets.size()); ++j) {
    for (int k = 0; k < static_cast<int>(hull.vertices.size()); ++k) {
      if (std::abs(facets[j].slack(hull.vertices[k])) <= 10 * eps) hull.facet_vertices[j].push_back(k);
    }
  }
  return hull;
}

PolytopeHull hull_from_halfspaces(const std::vector<Halfspace>& input,
                                  std::optional<UnboundedWitness>* unbounded, double tol) {
  if (input.empty()) throw Error(ErrorCode::kNotProperlyConvex, "no halfspaces: the whole chart");
  const int d = static_cast<int>(input.front().normal.size());
  std::vector<Halfspace> hs;
  double scale = 1.0;
  for (const auto& h : input) {
    if (h.normal.size() != d) throw Error(ErrorCode::kInvalidInput, "halfspaces of mixed dimension");
    const double norm = h.normal.norm();
    if (!(norm > 0.0) || !h.normal.allFinite() || !std::isfinite(h.offset)) {
      throw Error(ErrorCode::kInvalidInput, "degenerate or non-finite halfspace");
    }
    hs.push_back({h.normal / norm, h.offset / norm});
    scale = std::max(scale, std::abs(h.offset / norm));
  }
  // Bounding box far outside any bounded solution; a vertex on the box
  // reveals a recession direction.
  const double box = 1e6 * scale;
  const int n_input = static_cast<int>(hs.size());
  for (int i = 0; i < d; ++i) {
    hs.push_back({Vec::Unit(d, i), box});
    hs.push_back({-Vec::Unit(d, i), box});
  }
  const double eps = tol * box;
  std::vector<Vec> verts;
  for_each_combination(static_cast<int>(hs.size()), d, [&](const std::vector<int>& idx) {
    Mat a(d, d);
    Vec b(d);
    for (int i = 0; i < d; ++i) {
      a.row(i) = hs[idx[i]].normal.transpose();
      b[i] = hs[idx[i]].offset;
    }
    Eigen::FullPivLU<Mat> lu(a);
    if (!lu.isInvertible()) return;
    const Vec z = lu.solve(b);
    for (const auto& h : hs) {
      if (h.slack(z) < -tol * std::max(1.0, z.cwiseAbs().maxCoeff())) return;
    }
    for (const auto& v : verts) {
      if ((v - z).norm() <= eps) return;
    }
    verts.push_back(z);
  });
  if (verts.empty()) throw Error(ErrorCode::kNotProperlyConvex, "halfspace system is infeasible");
  for (const auto& v : verts) {
    if (v.cwiseAbs().maxCoeff() >= box * (1.0 - 1e-9)) {
      if (unbounded) *unbounded = UnboundedWitness{v.normalized()};
      std::ostringstream msg;
      msg << "halfspace system is unbounded (contains a ray)";
      throw Error(ErrorCode::kNotProperlyConvex, msg.str());
    }
  }
  (void)n_input;
  return hull_from_points(verts, tol);
}

namespace {

void triangulate_face(const PolytopeHull& hull, const std::vector<int>& face, int k,
                      std::vector<std::vector<Vec>>& out) {
  if (static_cast<int>(face.size()) == k + 1) {
    std::vector<Vec> simplex;
    for (int i : face) simplex.push_back(hull.vertices[i]);
    out.push_back(std::move(simplex));
    return;
  }
  Vec centroid = Vec::Zero(hull.dim());
  for (int i : face) centroid += hull.vertices[i];
  centroid /= static_cast<double>(face.size());

  std::set<std::vector<int>> subfaces;
  for (const auto& fv : hull.facet_vertices) {
    std::vector<int> sub;
    std::set_intersection(face.begin(), face.end(), fv.begin(), fv.end(), std::back_inserter(sub));
    if (static_cast<int>(sub.size()) < k || sub.size() == face.size()) continue;
    std::vector<Vec> pts;
    for (int i : sub) pts.push_back(hull.vertices[i]);
    if (affine_rank(pts) != k - 1) continue;
    subfaces.insert(sub);
  }
  for (const auto& sub : subfaces) {
    std::vector<std::vector<Vec>> lower;
    triangulate_face(hull, sub, k - 1, lower);
    for (auto& s : lower) {
      s.push_back(centroid);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<SimplexPoints> triangulate(const PolytopeHull& hull) {
  const int d = hull.dim();
  std::vector<int> all(hull.vertices.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<Vec>> raw;
  triangulate_face(hull, all, d, raw);
  std::vector<SimplexPoints> result;
  result.reserve(raw.size());
  for (const auto& s : raw) {
    SimplexPoints m(d, d + 1);
    for (int i = 0; i <= d; ++i) m.col(i) = s[i];
    result.push_back(std::move(m));
  }
  return result;
}

double simplex_volume(const SimplexPoints& s) {
  const int d = static_cast<int>(s.rows());
  Mat edges(d, d);
  for (int i = 0; i < d; ++i) edges.col(i) = s.col(i + 1) - s.col(0);
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= i;
  return std::abs(edges.determinant()) / fact;
}

void RegionMoments::accumulate(const RegionMoments& other) {
  if (first.size() == 0) {
    *this = other;
    return;
  }
  volume += other.volume;
  first += other.first;
  second += other.second;
}

RegionMoments simplex_moments(const SimplexPoints& s) {
  const int d = static_cast<int>(s.rows());
  RegionMoments m;
  m.volume = simplex_volume(s);
  const Vec sum = s.rowwise().sum();
  m.first = m.volume * sum / static_cast<double>(d + 1);
  m.second = m.volume / static_cast<double>((d + 1) * (d + 2)) *
             (s * s.transpose() + sum * sum.transpose());
  return m;
}

RegionMoments polytope_moments(const std::vector<SimplexPoints>& simplices) {
  RegionMoments total;
  for (const auto& s : simplices) total.accumulate(simplex_moments(s));
  return total;
}

std::pair<double, double> clip_line(const std::vector<Halfspace>& halfspaces, const Vec& z,
                                    const Vec& dir) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces) {
    const double rate = h.normal.dot(dir);
    const double slack = h.slack(z);
    if (rate > 0.0) {
      hi = std::min(hi, slack / rate);
    } else if (rate < 0.0) {
      lo = std::max(lo, slack / rate);
    } else if (slack < 0.0) {
      return {1.0, -1.0};
    }
  }
  return {lo, hi};
}

}  // namespace pconvex
