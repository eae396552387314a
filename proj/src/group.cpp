#include "pconvex/group.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pconvex/hilbert.hpp"

namespace pconvex {

namespace {

constexpr double kGolden = 0.6180339887498949;

template <typename Fn>
double golden_min(Fn&& f, double a, double b, int iterations) {
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc <= fd) {
      b = d, d = c, fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

double domain_scale(const ConvexDomain& domain) {
  return std::max(1.0, domain.support_value(Vec::Unit(domain.dim(), 0)) + 1.0);
}

}  // namespace

AutomorphismCheck is_automorphism(const ConvexDomain& domain, const ProjTransform& a, double tol) {
  AutomorphismCheck out;
  if (a.ambient_dim() != domain.ambient_dim()) throw Error(ErrorCode::kInvalidInput, "transform dimension mismatch");
  const Chart& chart = domain.chart();
  if (domain.kind() == BackendKind::kEllipsoid) {
    const Mat m = domain.quadric();
    const Mat a_inv = a.matrix().inverse();
    const Mat image = a_inv.transpose() * m * a_inv;
    const double c = (image.array() * m.array()).sum() / m.squaredNorm();
    out.residual = (image - c * m).norm() / image.norm();
    out.holds = c > 0.0 && out.residual <= tol;
    return out;
  }
  if (domain.is_polytope()) {
    const auto& verts = domain.hull().vertices;
    double scale = 1.0;
    for (const auto& v : verts) scale = std::max(scale, v.norm());
    int sign = 0;
    out.residual = 0.0;
    std::set<size_t> hit;
    for (const auto& v : verts) {
      const Vec w = a.matrix() * chart.ray(v);
      const double s = chart.pole().dot(w);
      const int sg = s > 0 ? 1 : -1;
      if (std::abs(s) <= 1e-12 * w.norm() || (sign != 0 && sg != sign)) {
        out.residual = std::numeric_limits<double>::infinity();
        return out;
      }
      sign = sg;
      const Vec z = chart.frame().transpose() * w / s;
      double best = std::numeric_limits<double>::infinity();
      size_t arg = 0;
      for (size_t j = 0; j < verts.size(); ++j) {
        const double dist = (z - verts[j]).norm();
        if (dist < best) best = dist, arg = j;
      }
      hit.insert(arg);
      out.residual = std::max(out.residual, best / scale);
    }
    out.holds = out.residual <= tol && hit.size() == verts.size();
    return out;
  }
  try {
    const ConvexDomain image = domain.transformed(a, chart);
    for (const auto& u : sample_directions(domain.dim(), 256)) {
      out.residual = std::max(out.residual, std::abs(image.support_value(u) - domain.support_value(u)));
    }
    out.residual /= domain_scale(domain);
  } catch (const Error&) {
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  out.holds = out.residual <= tol;
  return out;
}

HyperbolicData fixed_point_dynamics(const ConvexDomain& domain, const ProjTransform& a) {
  const AutomorphismCheck aut = is_automorphism(domain, a, 1e-8);
  if (!aut.holds) {
    throw Error(ErrorCode::kAutomorphismInconsistency,
                "matrix does not preserve the domain (residual " + std::to_string(aut.residual) + ")");
  }
  const int n1 = a.ambient_dim();
  Eigen::EigenSolver<Mat> es(a.matrix());
  const auto& lambda = es.eigenvalues();
  std::vector<int> order(n1);
  for (int i = 0; i < n1; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return std::abs(lambda[x]) > std::abs(lambda[y]); });
  const auto top = lambda[order[0]], second = lambda[order[1]];
  const auto bottom = lambda[order[n1 - 1]], second_bottom = lambda[order[n1 - 2]];
  const double scale = std::abs(top);
  if (std::abs(top.imag()) > 1e-12 * scale || std::abs(bottom.imag()) > 1e-12 * scale ||
      !(std::abs(top) > std::abs(second) * (1.0 + 1e-9)) ||
      !(std::abs(second_bottom) > std::abs(bottom) * (1.0 + 1e-9))) {
    throw Error(ErrorCode::kNotHyperbolic, "extreme eigenvalues are not real and simple");
  }
  const Chart& chart = domain.chart();
  auto fixed_point = [&](int idx) {
    Vec v = es.eigenvectors().col(idx).real();
    const double s = chart.pole().dot(v);
    if (std::abs(s) <= 1e-12 * v.norm()) {
      throw Error(ErrorCode::kAutomorphismInconsistency, "fixed point lies at infinity of the chart");
    }
    if (s < 0.0) v = -v;
    const ProjPoint p(v);
    const Containment c = domain.contains(chart.to_chart(p), kFrontierTol);
    if (c.location != Location::kBoundary) {
      throw Error(ErrorCode::kAutomorphismInconsistency,
                  "fixed point is not on the frontier (margin " + std::to_string(c.margin) + ")");
    }
    return p;
  };
  HyperbolicData out;
  out.a_plus = fixed_point(order[0]);
  out.a_minus = fixed_point(order[n1 - 1]);
  out.eigenvalue_gap = std::abs(top) / std::abs(second);
  out.eigenvalue_length = 0.5 * std::log(std::abs(top) / std::abs(bottom));

  // Power iteration cross-check.
  Vec x = chart.ray(domain.interior_point()).normalized();
  for (int it = 0; it < 100000; ++it) {
    Vec next = (a.matrix() * x).normalized();
    const double change = std::min((next - x).norm(), (next + x).norm());
    x = next;
    if (change < 1e-15) break;
  }
  out.power_iteration_residual =
      std::min((x - out.a_plus.coords()).norm(), (x + out.a_plus.coords()).norm());

  out.axis.a_minus = out.a_minus;
  out.axis.a_plus = out.a_plus;
  out.axis.chart_minus = chart.to_chart(out.a_minus);
  out.axis.chart_plus = chart.to_chart(out.a_plus);
  const Vec mid = 0.5 * (out.axis.chart_minus + out.axis.chart_plus);
  auto displacement = [&](const Vec& z) {
    const Vec image = chart.to_chart(Vec(a.matrix() * chart.ray(z)));
    return distance(domain, z, image);
  };
  if (domain.contains(mid).location == Location::kInside) {
    out.translation_length = golden_min(
        [&](double t) { return displacement(Vec(out.axis.chart_minus + t * (out.axis.chart_plus - out.axis.chart_minus))); },
        0.02, 0.98, 60);
  } else {
    // Axis inside the frontier (polytopes): search toward it from the interior.
    const Vec c = domain.interior_point();
    out.translation_length = golden_min([&](double t) { return displacement(Vec(c + t * (mid - c))); }, 0.0, 0.999, 60);
  }
  return out;
}

std::string inverse_label(const std::string& label) {
  std::string out(label.rbegin(), label.rend());
  for (char& ch : out) ch = std::islower(static_cast<unsigned char>(ch)) ? static_cast<char>(std::toupper(ch))
                                                                          : static_cast<char>(std::tolower(ch));
  return out;
}

std::vector<ReducedWord> reduced_words(const std::vector<ProjTransform>& gens, int max_length) {
  if (gens.empty()) return {};
  const int n1 = gens.front().ambient_dim();
  std::vector<Mat> letters;
  for (const auto& g : gens) {
    letters.push_back(g.matrix());
    letters.push_back(g.matrix().inverse());
  }
  std::vector<ReducedWord> all{{{}, Mat::Identity(n1, n1), ""}};
  size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const size_t end = all.size();
    for (size_t i = begin; i < end; ++i) {
      for (int l = 0; l < static_cast<int>(letters.size()); ++l) {
        if (!all[i].letters.empty() && (all[i].letters.back() ^ 1) == l) continue;
        ReducedWord w;
        w.letters = all[i].letters;
        w.letters.push_back(l);
        w.matrix = all[i].matrix * letters[l];
        w.label = all[i].label + static_cast<char>((l % 2 == 0 ? 'a' : 'A') + l / 2);
        all.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return all;
}

std::vector<OrbitPoint> orbit(const std::vector<ProjTransform>& gens, const ProjPoint& seed, int max_length) {
  if (max_length < 0) throw Error(ErrorCode::kInvalidInput, "orbit length must be nonnegative");
  std::vector<OrbitPoint> out{{seed, ""}};
  for (const auto& w : reduced_words(gens, max_length)) {
    if (w.letters.empty()) continue;
    const ProjPoint p(w.matrix * seed.coords());
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const OrbitPoint& o) { return same_projective_point(o.point, p, 1e-10); });
    if (!seen) out.push_back({p, w.label});
  }
  return out;
}

namespace {

struct Constraint {
  Halfspace halfspace;
  std::string word;
};

std::vector<Constraint> dirichlet_constraints(const ConvexCone& cone, const std::vector<ProjTransform>& gens,
                                              const Vec& x, const Vec& phi, const Mat& basis, int max_length) {
  std::vector<Constraint> out;
  const ConvexDomain& domain = cone.domain();
  if (domain.kind() != BackendKind::kEllipsoid) {
    for (const auto& f : domain.halfspaces()) {
      const Vec func = chart_halfspace_functional(domain.chart(), f);
      const Vec normal = -basis.transpose() * func;
      const double norm = normal.norm();
      if (norm <= 1e-14) continue;
      out.push_back({{normal / norm, func.dot(x) / norm}, "cone"});
    }
  }
  for (const auto& w : reduced_words(gens, max_length)) {
    if (w.letters.empty()) continue;
    const Vec image = w.matrix * x;
    if (same_projective_point(ProjPoint(image), ProjPoint(x), 1e-10)) {
      throw Error(ErrorCode::kInvalidBasepoint, "basepoint is fixed by the word " + w.label);
    }
    const Vec psi = w.matrix.inverse().transpose() * phi;
    const Vec normal = -basis.transpose() * psi;
    const double norm = normal.norm();
    if (norm <= 1e-14) continue;
    out.push_back({{normal / norm, (psi.dot(x) - 1.0) / norm}, w.label});
  }
  return out;
}

std::set<std::string> active_words(const std::vector<Constraint>& cons, const PolytopeHull& hull) {
  std::set<std::string> words;
  for (const auto& f : hull.facets) {
    for (const auto& c : cons) {
      if (c.halfspace.normal.dot(f.normal) > 1.0 - 1e-9 && std::abs(c.halfspace.offset - f.offset) <= 1e-9) {
        words.insert(c.word);
        break;
      }
    }
  }
  return words;
}

}  // namespace

DirichletDomain dirichlet_domain(const ConvexCone& cone, const std::vector<ProjTransform>& gens_in, const Vec& x,
                                 int max_length, const VinbergOptions& options) {
  if (max_length < 0) throw Error(ErrorCode::kInvalidInput, "word length must be nonnegative");
  const ConvexDomain& domain = cone.domain();
  const Chart& chart = domain.chart();
  // Representatives preserving the cone (not its negative).
  std::vector<ProjTransform> gens;
  const Vec probe = chart.ray(domain.interior_point());
  for (const auto& g : gens_in) {
    gens.push_back(chart.pole().dot(g.matrix() * probe) < 0.0 ? ProjTransform(-g.matrix()) : g);
  }
  DirichletDomain out;
  const FiberMinimum fm = min_volume_on_fiber(cone, x, options);
  out.functional = fm.functional;
  out.basepoint = x;
  Mat row(1, x.size());
  row.row(0) = fm.functional.transpose();
  out.basis = null_space(row, 0.0);

  const auto cons = dirichlet_constraints(cone, gens, x, out.functional, out.basis, max_length);
  std::vector<Halfspace> hs;
  for (const auto& c : cons) hs.push_back(c.halfspace);
  std::set<std::string> words;
  try {
    if (hs.empty()) throw Error(ErrorCode::kNotProperlyConvex, "no constraints");
    const PolytopeHull hull = hull_from_halfspaces(hs);
    out.bounded = true;
    out.vertices = hull.vertices;
    for (const auto& f : hull.facets) {
      for (const auto& c : cons) {
        if (c.halfspace.normal.dot(f.normal) > 1.0 - 1e-9 && std::abs(c.halfspace.offset - f.offset) <= 1e-9) {
          out.facets.push_back({f, c.word});
          break;
        }
      }
    }
    words = active_words(cons, hull);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotProperlyConvex) throw;
    out.bounded = false;
    for (const auto& c : cons) out.facets.push_back({c.halfspace, c.word});
    for (const auto& c : cons) words.insert(c.word);
  }
  if (max_length >= 1) {
    const auto prev = dirichlet_constraints(cone, gens, x, out.functional, out.basis, max_length - 1);
    std::vector<Halfspace> prev_hs;
    for (const auto& c : prev) prev_hs.push_back(c.halfspace);
    std::set<std::string> prev_words;
    try {
      if (prev_hs.empty()) throw Error(ErrorCode::kNotProperlyConvex, "no constraints");
      prev_words = active_words(prev, hull_from_halfspaces(prev_hs));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotProperlyConvex) throw;
      for (const auto& c : prev) prev_words.insert(c.word);
    }
    out.stable = prev_words == words;
  } else {
    out.stable = true;
  }
  return out;
}

}  // namespace pconvex
