#include "pconvex/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace pconvex {

namespace {

constexpr double kGolden = 0.6180339887498949;

void require_inside(const ConvexDomain& domain, const Vec& z) {
  if (z.size() != domain.dim()) throw Error(ErrorCode::kInvalidInput, "point dimension does not match domain");
  if (domain.contains(z).location == Location::kOutside) {
    throw Error(ErrorCode::kInvalidInput, "point lies outside the domain");
  }
}

// Distance between chart points x, y with the chord parameters of the line
// x + t (y - x) already known.
double distance_on_line(double lo, double hi, double length) {
  if (length * (hi - 1.0) <= kExactTol || length * (-lo) <= kExactTol) {
    throw Error(ErrorCode::kInfiniteDistance, "point within 1e-12 of the frontier");
  }
  // Cross-ratio with x at 0, y at 1, a- at lo, a+ at hi.
  return 0.5 * std::abs(std::log(hi * (1.0 - lo)) - std::log((hi - 1.0) * (-lo)));
}

// Minimizes f on [a, b] by golden-section search; returns (argmin, min).
template <typename Fn>
std::pair<double, double> golden_section(Fn&& f, double a, double b, int iterations) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  double best_t = fc <= fd ? c : d;
  double best = std::min(fc, fd);
  // Endpoints are candidates too (the minimum may sit at a vertex).
  const double fa = f(a), fb = f(b);
  if (fa < best) best = fa, best_t = a;
  if (fb < best) best = fb, best_t = b;
  return {best_t, best};
}

}  // namespace

double distance(const ConvexDomain& domain, const Vec& x, const Vec& y) {
  require_inside(domain, x);
  require_inside(domain, y);
  const Vec dir = y - x;
  const double length = dir.norm();
  if (length == 0.0) return 0.0;
  const auto [lo, hi] = domain.line_interval(x, dir);
  return distance_on_line(lo, hi, length);
}

double distance(const ConvexDomain& domain, const ProjPoint& x, const ProjPoint& y) {
  return distance(domain, domain.to_chart(x), domain.to_chart(y));
}

std::vector<Vec> geodesic(const ConvexDomain& domain, const Vec& x, const Vec& y, int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidInput, "geodesic needs k >= 1");
  const double total = distance(domain, x, y);
  std::vector<Vec> pts{x};
  if (total == 0.0) {
    for (int i = 1; i <= k; ++i) pts.push_back(x);
    return pts;
  }
  const Vec dir = y - x;
  const auto [lo, hi] = domain.line_interval(x, dir);
  // d(x, x + t dir) is increasing in t on [0, 1].
  auto d_at = [&, lo = lo, hi = hi](double t) {
    if (t <= 0.0) return 0.0;
    return 0.5 * std::log(hi * (t - lo) / ((hi - t) * (-lo)));
  };
  for (int i = 1; i < k; ++i) {
    const double target = total * i / k;
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 200 && b - a > 1e-17; ++it) {
      const double mid = 0.5 * (a + b);
      (d_at(mid) < target ? a : b) = mid;
    }
    pts.push_back(x + 0.5 * (a + b) * dir);
  }
  pts.push_back(y);
  return pts;
}

ChordProjection chord_projection(const ConvexDomain& domain, const Vec& x, const Vec& y) {
  ChordProjection p;
  p.chord = chord(domain, x, y);
  p.h_plus = support(domain, p.chord.chart_plus);
  p.h_minus = support(domain, p.chord.chart_minus);
  p.core = pencil_core(p.h_plus, p.h_minus);
  return p;
}

ProjectionResult project_to_chord(const ConvexDomain& domain, const ChordProjection& proj, const Vec& x) {
  require_inside(domain, x);
  const Vec w = domain.chart().ray(x);
  const int n1 = domain.ambient_dim();
  const Vec a_minus = proj.chord.a_minus.coords();
  const Vec a_plus = proj.chord.a_plus.coords();
  Mat split(n1, n1);
  split.leftCols(proj.core.dim()) = proj.core.basis;
  split.col(n1 - 2) = a_minus;
  split.col(n1 - 1) = a_plus;
  Eigen::JacobiSVD<Mat> svd(split, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cond = sv[0] / sv[n1 - 1];
  if (!(sv[n1 - 1] > kExactTol * sv[0])) {
    throw Error(ErrorCode::kProjectionUndefined, "chord line meets the pencil core");
  }
  const Vec c = svd.solve(w);
  const Vec u = c[n1 - 2] * a_minus + c[n1 - 1] * a_plus;
  if (u.norm() <= kExactTol * w.norm()) {
    throw Error(ErrorCode::kProjectionUndefined, "point lies on the pencil core");
  }
  ProjectionResult r;
  r.point = normalize_point(u, Vec(a_minus + a_plus));
  r.chart = domain.to_chart(r.point);
  r.condition = cond;
  return r;
}

ProjectionResult project_to_chord(const ConvexDomain& domain, const ChordProjection& proj,
                                  const ProjPoint& x) {
  return project_to_chord(domain, proj, domain.to_chart(x));
}

double van_der_corput(unsigned index) {
  double result = 0.0, base = 0.5;
  while (index) {
    if (index & 1u) result += base;
    index >>= 1u;
    base *= 0.5;
  }
  return result;
}

DeltaResult thin_triangle_delta(const ConvexDomain& domain, const std::array<Vec, 3>& t, int m, int threads) {
  for (const auto& v : t) require_inside(domain, v);
  DeltaResult result;
  const double scale = std::max({(t[1] - t[0]).norm(), (t[2] - t[0]).norm(), (t[2] - t[1]).norm()});
  Mat edges(domain.dim(), 2);
  edges.col(0) = t[1] - t[0];
  edges.col(1) = t[2] - t[0];
  Eigen::JacobiSVD<Mat> svd(edges);
  const auto& sv = svd.singularValues();
  if (scale == 0.0 || sv.size() < 2 || sv[1] <= 1e-12 * std::max(1.0, scale)) {
    result.degenerate = true;
    return result;
  }
  if (m < 1) throw Error(ErrorCode::kInvalidInput, "thin_triangle_delta needs m >= 1");

  // Side i runs from t[i] to t[(i+1)%3].
  auto point_on = [&](int side, double s) -> Vec { return t[side] + s * (t[(side + 1) % 3] - t[side]); };
  auto distance_to_side = [&](const Vec& p, int side) {
    return golden_section([&](double s) { return distance(domain, p, point_on(side, s)); }, 0.0, 1.0, 80)
        .second;
  };
  struct Job {
    int side;
    double param;
    double value;
  };
  std::vector<Job> jobs;
  for (int side = 0; side < 3; ++side) {
    for (int j = 0; j < m; ++j) jobs.push_back({side, van_der_corput(static_cast<unsigned>(j)), 0.0});
  }
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      Job& job = jobs[i];
      const Vec p = point_on(job.side, job.param);
      job.value = std::min(distance_to_side(p, (job.side + 1) % 3), distance_to_side(p, (job.side + 2) % 3));
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (workers == 1) {
    work(0, jobs.size());
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (jobs.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const size_t begin = w * chunk, end = std::min(jobs.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  // Fixed-order reduction keeps results independent of the thread count.
  for (const auto& job : jobs) {
    if (job.value > result.delta) {
      result.delta = job.value;
      result.side = job.side;
      result.parameter = job.param;
    }
  }
  return result;
}

}  // namespace pconvex
