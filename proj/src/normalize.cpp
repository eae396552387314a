#include "pconvex/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace pconvex {

MomentData moments(const ConvexDomain& domain) {
  MomentData m;
  const int n = domain.dim();
  if (domain.kind() == BackendKind::kEllipsoid) {
    const EllipsoidData& e = domain.ellipsoid_data();
    m.centroid = e.center;
    m.second_moment = e.shape / static_cast<double>(n + 2);
    m.volume = unit_ball_volume(n) * std::sqrt(e.shape.determinant());
    return m;
  }
  const RegionMoments raw = polytope_moments(domain.triangulation());
  m.volume = raw.volume;
  m.centroid = raw.first / raw.volume;
  m.second_moment = raw.second / raw.volume - m.centroid * m.centroid.transpose();
  m.second_moment = 0.5 * (m.second_moment + m.second_moment.transpose());
  return m;
}

BoxSandwich box_sandwich(const ConvexDomain& domain) {
  const int n = domain.dim();
  const Vec origin = Vec::Zero(n);
  if (domain.contains(origin).location != Location::kInside) {
    throw Error(ErrorCode::kInvalidInput, "box sandwich needs the chart origin inside the domain");
  }
  BoxSandwich s;
  for (int i = 0; i < n; ++i) {
    s.outer_tight = std::max({s.outer_tight, domain.support_value(Vec::Unit(n, i)),
                              domain.support_value(-Vec::Unit(n, i))});
  }
  const long corners = 1L << n;
  for (long mask = 0; mask < corners; ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
    const auto [lo, hi] = domain.line_interval(origin, v);
    (void)lo;
    s.inner_tight = std::max(s.inner_tight, 1.0 / hi);
  }
  const double k = std::max({1.0, s.outer_tight, s.inner_tight});
  s.inner_K = k;
  s.outer_K = k;
  // Independent certification: 2n support values and 2^n shrunken corners.
  bool ok = true;
  for (int i = 0; i < n; ++i) {
    ok = ok && domain.support_value(Vec::Unit(n, i)) <= k * (1.0 + 1e-12) &&
         domain.support_value(-Vec::Unit(n, i)) <= k * (1.0 + 1e-12);
  }
  for (long mask = 0; mask < corners && ok; ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
    ok = domain.contains(Vec(v / k)).margin >= -1e-12 * k;
  }
  s.certified = ok;
  return s;
}

void sorted_eigen(const Mat& sym, Vec& values, Mat& vectors) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (sym + sym.transpose()));
  const int n = static_cast<int>(sym.rows());
  values.resize(n);
  vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    values[i] = eig.eigenvalues()[n - 1 - i];
    Vec col = eig.eigenvectors().col(n - 1 - i);
    for (int j = 0; j < n; ++j) {
      if (std::abs(col[j]) > 1e-14) {
        if (col[j] < 0.0) col = -col;
        break;
      }
    }
    vectors.col(i) = col;
  }
}

Normalization isotropic_normalize(const ConvexDomain& domain, bool recenter) {
  const MomentData m = moments(domain);
  Vec values;
  Mat vectors;
  sorted_eigen(m.second_moment, values, vectors);
  if (!(values.minCoeff() > 1e-14 * values.maxCoeff())) {
    throw Error(ErrorCode::kDegenerateDomain, "second moment matrix is rank deficient");
  }
  Normalization out{recenter ? m.centroid : Vec(Vec::Zero(domain.dim())),
                    vectors,
                    values.cwiseSqrt().cwiseInverse(),
                    Mat(),
                    domain,
                    {}};
  out.linear = out.diagonal.asDiagonal() * vectors.transpose();
  out.domain = domain.affine_image(out.linear, -out.linear * out.translation);
  if (out.domain.contains(Vec(Vec::Zero(domain.dim()))).location == Location::kInside) {
    out.sandwich = box_sandwich(out.domain);
  }
  return out;
}

BoxCheck box_bound_check(const Mat& a, double k) {
  const int n1 = static_cast<int>(a.rows());
  const int n = n1 - 1;
  if (a.cols() != n1 || n < 1) throw Error(ErrorCode::kInvalidInput, "box check needs a square matrix of size >= 2");
  BoxCheck out;
  double worst = 0.0;
  int sign = 0;
  bool crossed = false;
  auto probe = [&](const Vec& z) {
    Vec x(n1);
    x << z, 1.0;
    const Vec w = a * x;
    const double last = w[n];
    const int s = last > 0.0 ? 1 : (last < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) crossed = true;
    if (sign == 0) sign = s;
    if (s != 0) worst = std::max(worst, w.head(n).cwiseAbs().maxCoeff() / std::abs(last));
  };
  const long corners = 1L << n;
  auto corner = [&](long mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
    return v;
  };
  for (long mask = 0; mask < corners; ++mask) {
    probe(corner(mask));
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1) continue;
      const Vec p = corner(mask), q = corner(mask | (1L << i));
      for (int s = 1; s < 8; ++s) probe(p + (q - p) * (s / 8.0));
    }
  }
  out.hypothesis_margin = crossed ? -std::numeric_limits<double>::infinity() : k - worst;
  out.hypothesis_holds = !crossed && out.hypothesis_margin >= -1e-12 * k;
  const double bound = 2.0 * k * std::abs(a(n, n));
  out.margins = (-a.cwiseAbs()).array() + bound;
  out.min_margin = out.margins.minCoeff();
  out.conclusion_holds = out.min_margin >= -1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());
  return out;
}

ConvexDomain RepSequence::domain_at(size_t k) const {
  if (k < domains.size()) return domains[k];
  if (base_domain && k < conjugators.size()) return base_domain->transformed(ProjTransform(conjugators[k]));
  if (base_domain && conjugators.empty()) return *base_domain;
  throw Error(ErrorCode::kInvalidInput, "sequence term " + std::to_string(k) + " has no domain");
}

namespace {

Mat orthonormal_columns(const Mat& m) {
  if (m.cols() == 0) return m;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > 1e-10 * std::max(1.0, svd.singularValues()[0])) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

// Real invariant blocks of w: eigenvalue clusters (complex pairs merged).
std::vector<Mat> eigen_blocks(const Mat& w) {
  const int n1 = static_cast<int>(w.rows());
  Eigen::EigenSolver<Mat> es(w);
  const auto& lambda = es.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  std::vector<int> order(n1);
  for (int i = 0; i < n1; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(lambda[a]), mb = std::abs(lambda[b]);
    if (std::abs(ma - mb) > 1e-12 * scale) return ma > mb;
    const bool ra = std::abs(lambda[a].imag()) <= 1e-12 * scale, rb = std::abs(lambda[b].imag()) <= 1e-12 * scale;
    if (ra != rb) return ra;
    if (lambda[a].real() != lambda[b].real()) return lambda[a].real() > lambda[b].real();
    return lambda[a].imag() > lambda[b].imag();
  });
  std::vector<bool> used(n1, false);
  std::vector<Mat> blocks;
  for (int idx : order) {
    if (used[idx]) continue;
    const std::complex<double> mu = lambda[idx];
    const bool real = std::abs(mu.imag()) <= 1e-9 * std::max(1.0, scale);
    Mat cols(n1, 0);
    for (int j = 0; j < n1; ++j) {
      if (used[j]) continue;
      const bool match = std::abs(lambda[j] - mu) <= 1e-8 * std::max(1.0, scale) ||
                         (!real && std::abs(lambda[j] - std::conj(mu)) <= 1e-8 * std::max(1.0, scale));
      if (!match) continue;
      used[j] = true;
      const Eigen::VectorXcd v = es.eigenvectors().col(j);
      cols.conservativeResize(Eigen::NoChange, cols.cols() + (real ? 1 : 2));
      if (real) {
        cols.col(cols.cols() - 1) = v.real();
      } else {
        cols.col(cols.cols() - 2) = v.real();
        cols.col(cols.cols() - 1) = v.imag();
      }
    }
    if (real) {
      // Full eigenspace of the cluster.
      const Mat shifted = w - mu.real() * Mat::Identity(n1, n1);
      const Mat kernel = null_space(shifted, 1e-8);
      if (kernel.cols() >= cols.cols()) cols = kernel;
    }
    const Mat basis = orthonormal_columns(cols);
    if (basis.cols() > 0) blocks.push_back(basis);
  }
  return blocks;
}

bool invariant_under(const Mat& u, const std::vector<Mat>& gens, double tol) {
  const Mat proj = Mat::Identity(u.rows(), u.rows()) - u * u.transpose();
  for (const auto& g : gens) {
    if ((proj * g * u).norm() > tol * std::max(1.0, g.norm())) return false;
  }
  return true;
}

struct Word {
  std::vector<int> letters;  // 2i for generator i, 2i+1 for its inverse
};

std::string word_label(const std::vector<int>& letters) {
  std::string s;
  for (int l : letters) s += static_cast<char>((l % 2 == 0 ? 'a' : 'A') + l / 2);
  return s;
}

std::optional<SubspaceWitness> sweep(const std::vector<Mat>& family, double tol, int max_length) {
  const int n1 = static_cast<int>(family.front().rows());
  std::vector<Mat> letters;
  for (const auto& g : family) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  std::vector<std::pair<std::vector<int>, Mat>> frontier{{{}, Mat::Identity(n1, n1)}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::pair<std::vector<int>, Mat>> next;
    for (const auto& [word, mat] : frontier) {
      for (int l = 0; l < static_cast<int>(letters.size()); ++l) {
        if (!word.empty() && (word.back() ^ 1) == l) continue;
        std::vector<int> w = word;
        w.push_back(l);
        next.emplace_back(w, mat * letters[l]);
      }
    }
    for (const auto& [word, mat] : next) {
      const auto blocks = eigen_blocks(mat);
      const int count = static_cast<int>(blocks.size());
      if (count > 16) continue;
      std::vector<std::pair<int, long>> subsets;
      for (long mask = 1; mask < (1L << count); ++mask) {
        int dim = 0;
        for (int b = 0; b < count; ++b) {
          if ((mask >> b) & 1) dim += static_cast<int>(blocks[b].cols());
        }
        if (dim < n1) subsets.emplace_back(dim, mask);
      }
      std::stable_sort(subsets.begin(), subsets.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [dim, mask] : subsets) {
        Mat cols(n1, 0);
        for (int b = 0; b < count; ++b) {
          if (!((mask >> b) & 1)) continue;
          cols.conservativeResize(Eigen::NoChange, cols.cols() + blocks[b].cols());
          cols.rightCols(blocks[b].cols()) = blocks[b];
        }
        const Mat u = orthonormal_columns(cols);
        if (u.cols() == 0 || u.cols() >= n1) continue;
        if (invariant_under(u, family, tol)) {
          SubspaceWitness w;
          w.found = true;
          w.basis = u;
          w.word = word_label(word);
          return w;
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

SubspaceWitness invariant_subspace_search(const std::vector<Mat>& gens, double tol, int max_length) {
  SubspaceWitness none;
  none.search_bound = max_length;
  if (gens.empty()) throw Error(ErrorCode::kInvalidInput, "invariant subspace search needs a generator");
  if (auto w = sweep(gens, tol, max_length)) {
    w->search_bound = max_length;
    return *w;
  }
  std::vector<Mat> transposed;
  for (const auto& g : gens) transposed.push_back(g.transpose());
  if (auto w = sweep(transposed, tol, max_length)) {
    // g^T preserves U, so g preserves U^perp.
    Mat ut = w->basis.transpose();
    w->basis = null_space(ut, 1e-12);
    w->dual = true;
    w->search_bound = max_length;
    return *w;
  }
  return none;
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

namespace {

Mat unit_det(const Mat& m) {
  const double det = m.determinant();
  if (!std::isfinite(det) || det == 0.0) throw Error(ErrorCode::kSingularMatrix, "singular sequence matrix");
  return m / std::pow(std::abs(det), 1.0 / static_cast<double>(m.rows()));
}

double sign_aligned_distance(const Mat& a, const Mat& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

}  // namespace

DegenerationReport analyze_sequence(const RepSequence& seq, const SequenceOptions& options) {
  const size_t count = seq.terms.empty() ? std::max(seq.domains.size(), seq.conjugators.size()) : seq.terms.size();
  if (count == 0) throw Error(ErrorCode::kInvalidInput, "empty sequence");
  for (const auto& term : seq.terms) {
    if (term.size() != seq.generators.size()) {
      throw Error(ErrorCode::kInvalidInput, "sequence term has the wrong number of generator matrices");
    }
  }
  DegenerationReport report;
  std::vector<double> ks, log_d, log_raw, log_b;
  for (size_t k = 0; k < count; ++k) {
    const ConvexDomain omega = seq.domain_at(k);
    const int n1 = omega.ambient_dim();
    const int n = n1 - 1;
    DegenerationStep step;
    step.k = static_cast<int>(k);
    const SphericalCenter sc = spherical_center(omega, options.vinberg);
    step.center = sc.center.coords();
    const Mat r1 = rotation_between(sc.center.coords(), Vec::Unit(n1, n));
    const Chart standard = Chart::standard(n1);
    const ConvexDomain centered = omega.transformed(ProjTransform(r1), standard);
    const MomentData m = moments(centered);
    Vec values;
    Mat vectors;
    sorted_eigen(m.second_moment, values, vectors);
    if (!(values.minCoeff() > 1e-14 * values.maxCoeff())) {
      throw Error(ErrorCode::kDegenerateDomain, "second moment matrix is rank deficient at term " + std::to_string(k));
    }
    Mat rot = Mat::Identity(n1, n1);
    rot.topLeftCorner(n, n) = vectors.transpose();
    const Mat g_rot = rot * r1;
    Vec d(n1);
    d.head(n) = values.cwiseSqrt().cwiseInverse();
    d[n] = 1.0;
    step.diagonal = d;
    step.norm_d = d.maxCoeff();
    step.normalized = centered.affine_image(Mat(d.head(n).asDiagonal() * vectors.transpose()), Vec::Zero(n));
    if (k < seq.terms.size()) {
      for (const auto& raw : seq.terms[k]) {
        const Mat rho = unit_det(raw);
        step.max_entry_raw = std::max(step.max_entry_raw, rho.cwiseAbs().maxCoeff());
        const Mat a = g_rot * rho * g_rot.transpose();
        Mat b(n1, n1);
        for (int i = 0; i < n1; ++i) {
          for (int j = 0; j < n1; ++j) b(i, j) = d[i] * a(i, j) / d[j];
        }
        step.corner_residual = std::max(step.corner_residual, std::abs(b(n, n) - a(n, n)));
        step.max_entry_b = std::max(step.max_entry_b, b.cwiseAbs().maxCoeff());
        step.rotated.push_back(a);
        step.conjugated.push_back(b);
      }
    }
    if (!report.steps.empty()) {
      const DegenerationStep& prev = report.steps.back();
      for (size_t g = 0; g < step.conjugated.size() && g < prev.conjugated.size(); ++g) {
        step.cauchy_residual = std::max(step.cauchy_residual, sign_aligned_distance(step.conjugated[g], prev.conjugated[g]));
      }
      for (const auto& u : sample_directions(n, 64)) {
        step.domain_residual = std::max(step.domain_residual, std::abs(step.normalized->support_value(u) -
                                                                       prev.normalized->support_value(u)));
      }
    }
    ks.push_back(static_cast<double>(k));
    log_d.push_back(std::log(step.norm_d));
    if (step.max_entry_raw > 0.0) log_raw.push_back(std::log(step.max_entry_raw));
    if (step.max_entry_b > 0.0) log_b.push_back(std::log(step.max_entry_b));
    report.steps.push_back(std::move(step));
  }
  report.slope_log_d = fitted_slope(ks, log_d);
  report.d_bounded = report.slope_log_d <= options.slope_threshold;
  if (log_raw.size() == ks.size()) {
    report.slope_log_raw = fitted_slope(ks, log_raw);
    report.raw_blowup = report.slope_log_raw > options.slope_threshold;
    report.b_bounded = fitted_slope(ks, log_b) <= options.slope_threshold;
  }
  const DegenerationStep& last = report.steps.back();
  report.convergent = count == 1 || (last.cauchy_residual < options.convergence_tol &&
                                     last.domain_residual < options.convergence_tol);
  const int n1 = static_cast<int>(last.diagonal.size());
  if (!last.conjugated.empty()) {
    double scale = 0.0;
    for (const auto& b : last.conjugated) scale = std::max(scale, b.cwiseAbs().maxCoeff());
    for (int dim = 1; dim < n1; ++dim) {
      double block = 0.0;
      for (const auto& b : last.conjugated) block = std::max(block, b.bottomLeftCorner(n1 - dim, dim).cwiseAbs().maxCoeff());
      if (block <= options.pattern_tol * scale) report.invariant_flags.push_back(dim);
    }
    report.limit_witness = invariant_subspace_search(last.conjugated, options.pattern_tol);
  }
  std::string verdict = report.d_bounded ? "bounded" : "unbounded";
  verdict += report.convergent ? ", convergent" : ", not-convergent";
  if (last.conjugated.empty()) {
    verdict += ", trivial-group";
  } else {
    verdict += report.limit_witness.found ? ", reducible" : ", irreducible";
    if (report.raw_blowup) verdict += ", raw-blowup";
    if (!report.b_bounded) verdict += ", conjugates-unbounded";
  }
  report.verdict = verdict;
  return report;
}

std::string DegenerationReport::to_json() const {
  using nlohmann::json;
  auto mat_json = [](const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(row);
    }
    return rows;
  };
  json j;
  j["verdict"] = verdict;
  j["slope_log_D"] = slope_log_d;
  j["slope_log_raw"] = slope_log_raw;
  j["D_bounded"] = d_bounded;
  j["raw_blowup"] = raw_blowup;
  j["B_bounded"] = b_bounded;
  j["convergent"] = convergent;
  j["invariant_flags"] = invariant_flags;
  j["limit_invariant_subspace"] = limit_witness.found ? mat_json(limit_witness.basis) : json(nullptr);
  json steps = json::array();
  for (const auto& s : this->steps) {
    json e;
    e["k"] = s.k;
    e["norm_D"] = s.norm_d;
    e["D"] = std::vector<double>(s.diagonal.data(), s.diagonal.data() + s.diagonal.size());
    e["center"] = std::vector<double>(s.center.data(), s.center.data() + s.center.size());
    e["max_entry_B"] = s.max_entry_b;
    e["max_entry_raw"] = s.max_entry_raw;
    e["corner_residual"] = s.corner_residual;
    e["cauchy_residual"] = s.cauchy_residual;
    e["domain_residual"] = s.domain_residual;
    json bs = json::array();
    for (const auto& b : s.conjugated) bs.push_back(mat_json(b));
    e["B"] = bs;
    steps.push_back(e);
  }
  j["steps"] = steps;
  return j.dump(2);
}

std::string DegenerationReport::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "k,norm_D,residual,max_entry,max_entry_raw,domain_residual\n";
  for (const auto& s : steps) {
    out << s.k << ',' << s.norm_d << ',' << s.cauchy_residual << ',' << s.max_entry_b << ',' << s.max_entry_raw << ','
        << s.domain_residual << '\n';
  }
  return out.str();
}

}  // namespace pconvex
