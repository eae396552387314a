#include "pconvex/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pconvex/group.hpp"
#include "pconvex/hilbert.hpp"
#include "pconvex/io.hpp"
#include "pconvex/normalize.hpp"
#include "pconvex/plconvex.hpp"
#include "pconvex/svg.hpp"
#include "pconvex/vinberg.hpp"

namespace pconvex {

namespace {

struct Common {
  std::string out;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  int threads = 1;
};

// What a handler produces; the dispatcher decides which format is written.
struct Outcome {
  Json report;
  std::string summary;
  std::optional<std::string> csv;
  std::optional<std::string> svg;
};

struct Inputs {
  std::string domain, gens, seq, mesh, matrix;
  std::string x, y, a, b, c, v, point;
  std::string estimator = "auto";
  int k = 8, m = 64, samples = 20000, dual_samples = 64, length = 2, index = 0, count = 16, budget = 64, trials = 100;
  double t = 1.0, box_k = 1.0, ring_fraction = 0.9;
  bool adjacent_only = false, no_recenter = false;
};

std::string fixed6(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << x;
  return s.str();
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json point_list(const std::vector<Vec>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

ConvexDomain load_domain(const std::string& path) { return domain_from_json(read_json_file(path)); }

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::kInvalidFormat, std::string("missing required option ") + flag);
}

VinbergOptions vinberg_options(const Inputs& in, const Common& common) {
  VinbergOptions o;
  if (in.estimator == "exact") {
    o.estimator = Estimator::kExact;
  } else if (in.estimator == "quadrature") {
    o.estimator = Estimator::kQuadrature;
  } else if (in.estimator == "auto") {
    o.estimator = Estimator::kAuto;
  } else {
    throw Error(ErrorCode::kInvalidFormat, "estimator must be auto, exact or quadrature");
  }
  o.samples = in.samples;
  o.seed = common.seed;
  return o;
}

std::optional<std::string> figure(const ConvexDomain& domain, const std::function<void(SvgFigure&)>& draw) {
  if (domain.dim() > 2) return std::nullopt;
  SvgFigure fig(domain);
  draw(fig);
  return fig.render();
}

Json hyperbolic_json(const HyperbolicData& h) {
  return Json{{"a_plus", to_json(h.a_plus.coords())},
              {"a_minus", to_json(h.a_minus.coords())},
              {"axis", {to_json(h.axis.chart_minus), to_json(h.axis.chart_plus)}},
              {"translation_length", h.translation_length},
              {"eigenvalue_length", h.eigenvalue_length},
              {"eigenvalue_gap", h.eigenvalue_gap},
              {"power_iteration_residual", h.power_iteration_residual}};
}

using Handler = std::function<Outcome(const Inputs&, const Common&)>;

// ---- domain ----

Outcome domain_validate(const Inputs& in, const Common&) {
  need(in.domain, "--domain");
  const ProperConvexityCertificate cert = validate(domain_spec_from_json(read_json_file(in.domain)));
  return {Json{{"properly_convex", true},
               {"hyperplane", to_json(cert.hyperplane.coeffs())},
               {"bounding_radius", cert.bounding_radius},
               {"margin", cert.margin}},
          "properly convex, margin " + fixed6(cert.margin), std::nullopt, std::nullopt};
}

Outcome domain_dual(const Inputs& in, const Common&) {
  need(in.domain, "--domain");
  const ConvexDomain d = load_domain(in.domain);
  const ConvexDomain dual = dual_domain(d);
  const double residual = duality_residual(d, in.dual_samples);
  auto svg = figure(dual, [](SvgFigure&) {});
  return {Json{{"dual", domain_to_json(dual)}, {"duality_residual", residual}},
          std::string(backend_name(dual.kind())) + " dual, double-dual residual " + fixed6(residual), std::nullopt,
          svg};
}

Outcome domain_flats(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  const ConvexDomain d = load_domain(in.domain);
  const auto flats = boundary_flats(d, common.tol.value_or(kMatrixTol));
  Json list = Json::array();
  for (const auto& f : flats) list.push_back(point_list(f.vertices));
  auto svg = figure(d, [&](SvgFigure& fig) {
    for (const auto& f : flats) fig.add_polyline(f.vertices);
  });
  return {Json{{"flats", list}, {"strictly_convex", flats.empty()}},
          std::to_string(flats.size()) + " boundary flats", std::nullopt, svg};
}

// ---- hilbert ----

Outcome hilbert_dist(const Inputs& in, const Common&) {
  need(in.domain, "--domain");
  need(in.x, "--x");
  need(in.y, "--y");
  const ConvexDomain d = load_domain(in.domain);
  const Vec x = parse_vector(in.x), y = parse_vector(in.y);
  const double dist = distance(d, x, y);
  auto svg = figure(d, [&](SvgFigure& fig) { fig.add_points({x, y}); });
  return {Json{{"x", to_json(x)}, {"y", to_json(y)}, {"distance", dist}}, fixed6(dist), std::nullopt, svg};
}

Outcome hilbert_geodesic(const Inputs& in, const Common&) {
  need(in.domain, "--domain");
  need(in.x, "--x");
  need(in.y, "--y");
  const ConvexDomain d = load_domain(in.domain);
  const auto pts = geodesic(d, parse_vector(in.x), parse_vector(in.y), in.k);
  std::ostringstream csv;
  csv << std::setprecision(17) << "index";
  for (int i = 0; i < pts.front().size(); ++i) csv << ",z" << i;
  csv << '\n';
  for (size_t i = 0; i < pts.size(); ++i) {
    csv << i;
    for (int c = 0; c < pts[i].size(); ++c) csv << ',' << pts[i][c];
    csv << '\n';
  }
  auto svg = figure(d, [&](SvgFigure& fig) {
    fig.add_polyline(pts);
    fig.add_points(pts);
  });
  return {Json{{"points", point_list(pts)}}, std::to_string(pts.size()) + " geodesic points", csv.str(), svg};
}

Outcome hilbert_delta(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  need(in.a, "--a");
  need(in.b, "--b");
  need(in.c, "--c");
  const ConvexDomain d = load_domain(in.domain);
  const std::array<Vec, 3> tri{parse_vector(in.a), parse_vector(in.b), parse_vector(in.c)};
  const DeltaResult r = thin_triangle_delta(d, tri, in.m, common.threads);
  auto svg = figure(d, [&](SvgFigure& fig) {
    std::vector<Vec> loop;
    for (int s = 0; s < 3; ++s) {
      const auto side = geodesic(d, tri[s], tri[(s + 1) % 3], 16);
      loop.insert(loop.end(), side.begin(), side.end());
    }
    fig.add_polyline(loop);
  });
  return {Json{{"delta", r.delta}, {"degenerate", r.degenerate}, {"side", r.side}, {"parameter", r.parameter},
               {"samples_per_side", in.m}},
          "delta " + fixed6(r.delta), std::nullopt, svg};
}

// ---- vinberg ----

Outcome vinberg_volume(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  need(in.v, "--v");
  const ConvexCone cone(load_domain(in.domain));
  const VolumeResult r = volume_functional(cone, parse_vector(in.v), vinberg_options(in, common));
  return {Json{{"value", r.value}, {"estimator", estimator_name(r.estimator)}, {"error_bound", r.error_bound}},
          "V = " + fixed6(r.value), std::nullopt, std::nullopt};
}

Outcome vinberg_grad(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  need(in.v, "--v");
  const ConvexCone cone(load_domain(in.domain));
  const Vec g = grad_volume(cone, parse_vector(in.v), vinberg_options(in, common));
  return {Json{{"gradient", to_json(g)}}, "|grad V| = " + fixed6(g.norm()), std::nullopt, std::nullopt};
}

Outcome vinberg_theta(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  need(in.v, "--v");
  const ConvexCone cone(load_domain(in.domain));
  const ProjPoint p = theta(cone, parse_vector(in.v), vinberg_options(in, common));
  Json report{{"point", to_json(p.coords())}};
  std::string summary = "theta computed";
  try {
    const Vec z = cone.domain().to_chart(p);
    report["chart"] = to_json(z);
    std::ostringstream s;
    s << "theta at chart point (";
    for (int i = 0; i < z.size(); ++i) s << (i ? ", " : "") << fixed6(z[i]);
    s << ')';
    summary = s.str();
  } catch (const Error&) {
  }
  return {report, summary, std::nullopt, std::nullopt};
}

Outcome vinberg_center(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  const SphericalCenter c = spherical_center(load_domain(in.domain), vinberg_options(in, common));
  return {Json{{"center", to_json(c.center.coords())},
               {"rotation", to_json(c.rotation.matrix())},
               {"gradient_norm", c.gradient_norm},
               {"iterations", c.iterations}},
          "spherical center, gradient norm " + std::to_string(c.gradient_norm), std::nullopt, std::nullopt};
}

Outcome vinberg_surface(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  const ConvexDomain d = load_domain(in.domain);
  const ConvexCone cone(d);
  const VolumeModel model(cone, vinberg_options(in, common));
  std::vector<Vec> pts;
  std::ostringstream csv;
  csv << std::setprecision(17) << "index";
  for (int i = 0; i < d.ambient_dim(); ++i) csv << ",x" << i;
  csv << '\n';
  // Rays through chart points spread over the domain.
  const auto dirs = sample_directions(d.dim(), std::max(1, in.count));
  const Vec c = d.interior_point();
  for (size_t i = 0; i < dirs.size(); ++i) {
    const double reach = d.line_interval(c, dirs[i]).second;
    const Vec q = d.chart().ray(c + 0.5 * reach * dirs[i]).normalized();
    pts.push_back(characteristic_point(model, q));
    csv << i;
    for (int k = 0; k < pts.back().size(); ++k) csv << ',' << pts.back()[k];
    csv << '\n';
  }
  return {Json{{"points", point_list(pts)}, {"estimator", estimator_name(model.estimator())}},
          std::to_string(pts.size()) + " characteristic points", csv.str(), std::nullopt};
}

// ---- normalize ----

Outcome normalize_moments(const Inputs& in, const Common&) {
  need(in.domain, "--domain");
  const MomentData m = moments(load_domain(in.domain));
  return {Json{{"volume", m.volume}, {"centroid", to_json(m.centroid)}, {"second_moment", to_json(m.second_moment)}},
          "volume " + fixed6(m.volume), std::nullopt, std::nullopt};
}

Outcome normalize_isotropic(const Inputs& in, const Common&) {
  need(in.domain, "--domain");
  const Normalization n = isotropic_normalize(load_domain(in.domain), !in.no_recenter);
  const BoxSandwich& s = n.sandwich;
  auto svg = figure(n.domain, [](SvgFigure&) {});
  return {Json{{"translation", to_json(n.translation)},
               {"rotation", to_json(n.rotation)},
               {"diagonal", to_json(n.diagonal)},
               {"linear", to_json(n.linear)},
               {"domain", domain_to_json(n.domain)},
               {"sandwich",
                {{"inner_K", s.inner_K},
                 {"outer_K", s.outer_K},
                 {"outer_tight", s.outer_tight},
                 {"inner_tight", s.inner_tight},
                 {"certified", s.certified}}}},
          "isotropic position, K = " + fixed6(s.outer_K), std::nullopt, svg};
}

Outcome normalize_boxcheck(const Inputs& in, const Common&) {
  need(in.matrix, "--matrix");
  const Json j = read_json_file(in.matrix);
  const Mat a = matrix_from_json(j.is_object() && j.contains("matrix") ? j.at("matrix") : j);
  const BoxCheck r = box_bound_check(a, in.box_k);
  return {Json{{"hypothesis_holds", r.hypothesis_holds},
               {"hypothesis_margin", r.hypothesis_margin},
               {"conclusion_holds", r.conclusion_holds},
               {"margins", to_json(r.margins)},
               {"min_margin", r.min_margin}},
          std::string("hypothesis ") + (r.hypothesis_holds ? "holds" : "fails") + ", entry bound " +
              (r.conclusion_holds ? "holds" : "fails"),
          std::nullopt, std::nullopt};
}

Outcome normalize_sequence(const Inputs& in, const Common& common) {
  need(in.seq, "--seq");
  const RepSequence seq = sequence_from_json(read_json_file(in.seq));
  SequenceOptions o;
  o.vinberg = vinberg_options(in, common);
  if (common.tol) o.pattern_tol = *common.tol;
  const DegenerationReport r = analyze_sequence(seq, o);
  return {Json::parse(r.to_json()), r.verdict, r.to_csv(), std::nullopt};
}

// ---- group ----

Outcome group_aut(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  need(in.gens, "--gens");
  const ConvexDomain d = load_domain(in.domain);
  const auto gens = generators_from_json(read_json_file(in.gens));
  Json list = Json::array();
  bool all = true;
  for (const auto& g : gens) {
    const AutomorphismCheck c = is_automorphism(d, g, common.tol.value_or(1e-9));
    all = all && c.holds;
    list.push_back({{"holds", c.holds}, {"residual", c.residual}});
  }
  return {Json{{"generators", list}, {"all_automorphisms", all}},
          all ? "all generators preserve the domain" : "some generator does not preserve the domain", std::nullopt,
          std::nullopt};
}

Outcome group_dynamics(const Inputs& in, const Common&) {
  need(in.domain, "--domain");
  need(in.gens, "--gens");
  const ConvexDomain d = load_domain(in.domain);
  const auto gens = generators_from_json(read_json_file(in.gens));
  if (in.index < 0 || in.index >= static_cast<int>(gens.size())) {
    throw Error(ErrorCode::kInvalidFormat, "--index out of range");
  }
  const HyperbolicData h = fixed_point_dynamics(d, gens[in.index]);
  auto svg = figure(d, [&](SvgFigure& fig) {
    fig.add_polyline({h.axis.chart_minus, h.axis.chart_plus});
    fig.add_points({h.axis.chart_minus, h.axis.chart_plus});
  });
  return {hyperbolic_json(h), "translation length " + fixed6(h.translation_length), std::nullopt, svg};
}

Outcome group_orbit(const Inputs& in, const Common&) {
  need(in.gens, "--gens");
  need(in.point, "--point");
  const auto gens = generators_from_json(read_json_file(in.gens));
  const auto pts = orbit(gens, ProjPoint(parse_vector(in.point)), in.length);
  Json list = Json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "word";
  for (int i = 0; i < gens.front().ambient_dim(); ++i) csv << ",x" << i;
  csv << '\n';
  for (const auto& p : pts) {
    list.push_back({{"word", p.word}, {"point", to_json(p.point.coords())}});
    csv << (p.word.empty() ? "e" : p.word);
    for (int i = 0; i < p.point.ambient_dim(); ++i) csv << ',' << p.point[i];
    csv << '\n';
  }
  std::optional<std::string> svg;
  if (!in.domain.empty()) {
    const ConvexDomain d = load_domain(in.domain);
    std::vector<Vec> chart_pts;
    for (const auto& p : pts) {
      try {
        chart_pts.push_back(d.to_chart(p.point));
      } catch (const Error&) {
      }
    }
    svg = figure(d, [&](SvgFigure& fig) { fig.add_points(chart_pts); });
  }
  return {Json{{"orbit", list}}, std::to_string(pts.size()) + " orbit points", csv.str(), svg};
}

Outcome group_dirichlet(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  need(in.gens, "--gens");
  need(in.x, "--x");
  const ConvexCone cone(load_domain(in.domain));
  const auto gens = generators_from_json(read_json_file(in.gens));
  const DirichletDomain q = dirichlet_domain(cone, gens, parse_vector(in.x), in.length, vinberg_options(in, common));
  Json facets = Json::array();
  for (const auto& f : q.facets) {
    facets.push_back({{"word", f.word}, {"normal", to_json(f.halfspace.normal)}, {"offset", f.halfspace.offset}});
  }
  Json verts = Json::array();
  for (const auto& v : q.vertices) verts.push_back(to_json(q.lift(v)));
  return {Json{{"functional", to_json(q.functional)},
               {"basepoint", to_json(q.basepoint)},
               {"basis", to_json(q.basis)},
               {"facets", facets},
               {"vertices", verts},
               {"bounded", q.bounded},
               {"stable", q.stable}},
          std::to_string(q.facets.size()) + " facets, " + (q.bounded ? "bounded" : "unbounded") +
              (q.stable ? ", stable" : ", not yet stable"),
          std::nullopt, std::nullopt};
}

// ---- plconvex ----

SimplicialHypersurface load_mesh(const Inputs& in) {
  need(in.mesh, "--mesh");
  return mesh_from_json(read_json_file(in.mesh));
}

Outcome plconvex_check(const Inputs& in, const Common&) {
  const RadialSectionResult r = radial_section_check(load_mesh(in));
  return {Json{{"ok", r.ok},
               {"transversality_failures", r.transversality_failures},
               {"overlaps", r.overlaps},
               {"orientation_failures", r.orientation_failures}},
          r.ok ? "radial section" : "not a radial section", std::nullopt, std::nullopt};
}

Outcome plconvex_certify(const Inputs& in, const Common&) {
  const ConvexityCertificate c = certify_generic_convex(load_mesh(in), !in.adjacent_only);
  return {certificate_to_json(c),
          c.certified ? "certified generic-convex, margin " + fixed6(c.margin)
                      : "not certified, " + std::to_string(c.violations.size()) + " violations",
          std::nullopt, std::nullopt};
}

Outcome plconvex_radius(const Inputs& in, const Common& common) {
  const PerturbationReport r = perturbation_radius(load_mesh(in), common.seed, in.trials);
  return {Json{{"epsilon", r.epsilon},
               {"lipschitz_bound", r.lipschitz_bound},
               {"margin", r.margin},
               {"trials", r.trials},
               {"passed", r.passed},
               {"fails_at_10x", r.fails_at_10x}},
          "epsilon " + std::to_string(r.epsilon) + ", " + std::to_string(r.passed) + "/" + std::to_string(r.trials) +
              " perturbations certified",
          std::nullopt, std::nullopt};
}

Outcome plconvex_outward(const Inputs& in, const Common&) {
  const OutwardResult r = outward_check(load_mesh(in), in.t);
  return {Json{{"outward", r.outward}, {"margin", finite_or_null(r.margin)}},
          std::string(r.outward ? "outward" : "not outward") + ", margin " + fixed6(r.margin), std::nullopt,
          std::nullopt};
}

Outcome plconvex_build(const Inputs& in, const Common& common) {
  need(in.domain, "--domain");
  const ConvexCone cone(load_domain(in.domain));
  PLSurfaceOptions o;
  o.vinberg = vinberg_options(in, common);
  o.seed = common.seed;
  o.ring_fraction = in.ring_fraction;
  const PLSurfaceResult r = pl_characteristic_surface(cone, in.budget, o);
  Json report = mesh_to_json(r.surface);
  report["certificate"] = certificate_to_json(r.certificate);
  report["max_radial_deviation"] = r.max_radial_deviation;
  report["flips"] = r.flips;
  report["jitter_rounds"] = r.jitter_rounds;
  return {report,
          std::to_string(r.surface.simplices().size()) + " simplices, deviation " + fixed6(r.max_radial_deviation),
          std::nullopt, std::nullopt};
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Json witness_json(const std::string& witness) {
  if (witness.empty()) return nullptr;
  try {
    return Json::parse(witness);
  } catch (const Json::exception&) {
    return witness;
  }
}

}  // namespace

CommandResult dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CommandResult result;
  CLI::App app{"Properly-convex projective geometry toolkit", "pconvex"};
  app.require_subcommand(1);
  Common common;
  Inputs in;
  std::string command_name;
  Handler handler;

  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Handler h) {
    CLI::App* c = parent->add_subcommand(name, help);
    c->add_option("--out", common.out, "Report path (.json, .csv or .svg where supported)");
    c->add_option("--seed", common.seed, "Seed for quadrature, jitter and trials");
    c->add_option("--tol", common.tol, "Tolerance override for the command's main test");
    c->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
    c->callback([&, parent, name, h] {
      command_name = parent->get_name() + " " + name;
      handler = h;
    });
    return c;
  };
  auto domain_opt = [&](CLI::App* c) { c->add_option("--domain", in.domain, "Domain JSON file"); };
  auto vinberg_opts = [&](CLI::App* c) {
    c->add_option("--estimator", in.estimator, "auto, exact or quadrature");
    c->add_option("--samples", in.samples, "Quadrature samples")->check(CLI::PositiveNumber);
  };

  CLI::App* domain = group("domain", "Domain validation and duality");
  {
    domain_opt(leaf(domain, "validate", "Certify proper convexity", domain_validate));
    auto* c = leaf(domain, "dual", "Dual domain and double-dual residual", domain_dual);
    domain_opt(c);
    c->add_option("--samples", in.dual_samples, "Support directions for the residual")->check(CLI::PositiveNumber);
    domain_opt(leaf(domain, "flats", "Segments and faces in the frontier", domain_flats));
  }
  CLI::App* hilbert = group("hilbert", "Hilbert metric");
  {
    auto* c = leaf(hilbert, "dist", "Distance between chart points", hilbert_dist);
    domain_opt(c);
    c->add_option("--x", in.x)->required();
    c->add_option("--y", in.y)->required();
    c = leaf(hilbert, "geodesic", "Points equally spaced along the segment", hilbert_geodesic);
    domain_opt(c);
    c->add_option("--x", in.x)->required();
    c->add_option("--y", in.y)->required();
    c->add_option("--k", in.k, "Number of steps")->check(CLI::PositiveNumber);
    c = leaf(hilbert, "delta", "Thinness of a geodesic triangle", hilbert_delta);
    domain_opt(c);
    c->add_option("--a", in.a)->required();
    c->add_option("--b", in.b)->required();
    c->add_option("--c", in.c)->required();
    c->add_option("--m", in.m, "Samples per side")->check(CLI::PositiveNumber);
  }
  CLI::App* vinberg = group("vinberg", "Characteristic function and Theta map");
  {
    for (auto [name, help, h] : {std::tuple{"volume", "V(v)", Handler(vinberg_volume)},
                                 std::tuple{"grad", "Gradient of V", Handler(vinberg_grad)},
                                 std::tuple{"theta", "Theta(v)", Handler(vinberg_theta)}}) {
      auto* c = leaf(vinberg, name, help, h);
      domain_opt(c);
      c->add_option("--v", in.v, "Dual functional")->required();
      vinberg_opts(c);
    }
    auto* c = leaf(vinberg, "center", "Spherical center", vinberg_center);
    domain_opt(c);
    vinberg_opts(c);
    c = leaf(vinberg, "surface", "Sample points of the characteristic hypersurface", vinberg_surface);
    domain_opt(c);
    vinberg_opts(c);
    c->add_option("--count", in.count, "Number of rays")->check(CLI::PositiveNumber);
  }
  CLI::App* normalize = group("normalize", "Isotropic normalization and degeneration");
  {
    domain_opt(leaf(normalize, "moments", "Volume, centroid and second moment", normalize_moments));
    auto* c = leaf(normalize, "isotropic", "Isotropic position and box sandwich", normalize_isotropic);
    domain_opt(c);
    c->add_flag("--no-recenter", in.no_recenter, "Keep the chart origin");
    c = leaf(normalize, "boxcheck", "Box estimate on a projective map", normalize_boxcheck);
    c->add_option("--matrix", in.matrix, "Matrix JSON file")->required();
    c->add_option("--k", in.box_k, "Box constant")->check(CLI::PositiveNumber);
    c = leaf(normalize, "sequence", "Degeneration analysis of a representation sequence", normalize_sequence);
    c->add_option("--seq", in.seq, "RepSequence JSON file")->required();
    vinberg_opts(c);
  }
  CLI::App* grp = group("group", "Automorphisms, orbits and fundamental domains");
  {
    auto* c = leaf(grp, "aut", "Check generators preserve the domain", group_aut);
    domain_opt(c);
    c->add_option("--gens", in.gens, "Generator JSON file")->required();
    c = leaf(grp, "dynamics", "Fixed points and translation length", group_dynamics);
    domain_opt(c);
    c->add_option("--gens", in.gens)->required();
    c->add_option("--index", in.index, "Generator index");
    c = leaf(grp, "orbit", "Orbit of a point under reduced words", group_orbit);
    c->add_option("--gens", in.gens)->required();
    c->add_option("--point", in.point, "Homogeneous seed point")->required();
    c->add_option("--length", in.length, "Maximum word length")->check(CLI::NonNegativeNumber);
    c->add_option("--domain", in.domain, "Domain for the figure");
    c = leaf(grp, "dirichlet", "Polyhedral fundamental domain", group_dirichlet);
    domain_opt(c);
    c->add_option("--gens", in.gens)->required();
    c->add_option("--x", in.x, "Homogeneous basepoint in the cone")->required();
    c->add_option("--length", in.length, "Maximum word length")->check(CLI::NonNegativeNumber);
    vinberg_opts(c);
  }
  CLI::App* pl = group("plconvex", "PL convexity certificates");
  {
    auto mesh_opt = [&](CLI::App* c) { c->add_option("--mesh", in.mesh, "Mesh JSON file")->required(); };
    mesh_opt(leaf(pl, "check", "Radial-section check", plconvex_check));
    auto* c = leaf(pl, "certify", "Generic-convexity certificate", plconvex_certify);
    mesh_opt(c);
    c->add_flag("--adjacent-only", in.adjacent_only, "Use only link vertices of adjacent simplices");
    c = leaf(pl, "radius", "Certified perturbation radius", plconvex_radius);
    mesh_opt(c);
    c->add_option("--trials", in.trials, "Random perturbation trials")->check(CLI::NonNegativeNumber);
    c = leaf(pl, "outward", "Outwardness of the scaled surface", plconvex_outward);
    mesh_opt(c);
    c->add_option("--t", in.t, "Scale factor")->check(CLI::PositiveNumber);
    c = leaf(pl, "build", "PL approximation of the characteristic hypersurface", plconvex_build);
    domain_opt(c);
    vinberg_opts(c);
    c->add_option("--budget", in.budget, "Vertex budget");
    c->add_option("--ring-fraction", in.ring_fraction, "Outer sample ring as a fraction of the radial extent");
  }

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg, help;
    const int code = app.exit(e, help, msg);
    out << help.str();
    err << msg.str();
    result.exit_code = code == 0 ? 0 : 2;
    return result;
  }

  auto write_error = [&](const std::string& code, const std::string& message, const std::string& witness) {
    err << "error [" << code << "]: " << message << '\n';
    if (!witness.empty()) err << "witness: " << witness << '\n';
    if (!common.out.empty()) {
      try {
        const Json report{{"command", command_name},
                          {"error", {{"code", code}, {"message", message}, {"witness", witness_json(witness)}}}};
        write_text_file(common.out, report.dump(2) + "\n");
        result.report_path = common.out;
      } catch (const Error&) {
        result.warnings.push_back("could not write error report to " + common.out);
      }
    }
  };

  try {
    Outcome o = handler(in, common);
    if (!common.out.empty()) {
      std::string text;
      if (ends_with(common.out, ".csv") && o.csv) {
        text = *o.csv;
      } else if (ends_with(common.out, ".svg") && o.svg) {
        text = *o.svg;
      } else {
        if (ends_with(common.out, ".csv") || ends_with(common.out, ".svg")) {
          result.warnings.push_back(command_name + " has no " + common.out.substr(common.out.size() - 3) +
                                    " output; writing JSON");
        }
        o.report["command"] = command_name;
        text = o.report.dump(2) + "\n";
      }
      write_text_file(common.out, text);
      result.report_path = common.out;
    }
    out << o.summary << '\n';
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  } catch (const Error& e) {
    result.exit_code = e.code() == ErrorCode::kInvalidFormat ? 2 : 1;
    write_error(std::string(error_code_name(e.code())), e.what(), e.witness());
  } catch (const std::exception& e) {
    result.exit_code = 1;
    write_error("internal", e.what(), "");
  }
  return result;
}

}  // namespace pconvex
