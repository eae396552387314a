#include "pconvex/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pconvex {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidFormat, what); }

double number(const Json& j) {
  if (!j.is_number()) bad("expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad("non-finite number");
  return x;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::vector<Vec> vector_list(const Json& j) {
  if (!j.is_array()) bad("expected an array of vectors");
  std::vector<Vec> out;
  for (const auto& e : j) out.push_back(vector_from_json(e));
  return out;
}

std::vector<std::vector<int>> index_lists(const Json& j) {
  if (!j.is_array()) bad("expected an array of index lists");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array()) bad("expected an index list");
    std::vector<int> idx;
    for (const auto& e : row) {
      if (!e.is_number_integer()) bad("indices must be integers");
      idx.push_back(e.get<int>());
    }
    out.push_back(std::move(idx));
  }
  return out;
}

std::vector<Mat> matrix_list(const Json& j) {
  if (!j.is_array()) bad("expected an array of matrices");
  std::vector<Mat> out;
  for (const auto& e : j) out.push_back(matrix_from_json(e));
  return out;
}

}  // namespace

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const Mat& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(std::move(row));
  }
  return out;
}

Vec vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nonempty numeric array");
  Vec v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = number(j[i]);
  return v;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nonempty matrix");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) bad("matrix rows must be nonempty arrays");
  Mat m(static_cast<int>(j.size()), static_cast<int>(cols));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("ragged matrix");
    for (size_t k = 0; k < cols; ++k) m(static_cast<int>(i), static_cast<int>(k)) = number(j[i][k]);
  }
  return m;
}

DomainSpec domain_spec_from_json(const Json& j) {
  const Json& backend = field(j, "backend");
  const Json& type = field(backend, "type");
  if (!type.is_string()) bad("backend type must be a string");
  const std::string kind = type.get<std::string>();

  DomainSpec spec;
  int ambient = 0;
  if (j.contains("chart")) {
    const Vec pole = vector_from_json(j.at("chart"));
    if (pole.norm() == 0.0) bad("chart pole must be nonzero");
    spec.chart = Chart(DualFunctional(pole));
    ambient = static_cast<int>(pole.size());
  }
  auto chart_for = [&](int dim) {
    if (ambient == 0) {
      spec.chart = Chart::standard(dim + 1);
    } else if (ambient != dim + 1) {
      bad("backend dimension does not match the chart");
    }
  };

  if (kind == "hpoly") {
    const auto normals = vector_list(field(backend, "normals"));
    const Json& offsets = field(backend, "offsets");
    if (!offsets.is_array() || offsets.size() != normals.size() || normals.empty()) {
      bad("hpoly needs matching normals and offsets");
    }
    HPolySpec h;
    for (size_t i = 0; i < normals.size(); ++i) {
      const double len = normals[i].norm();
      if (len == 0.0) bad("zero halfspace normal");
      h.halfspaces.push_back({normals[i] / len, number(offsets[i]) / len});
    }
    chart_for(static_cast<int>(normals.front().size()));
    spec.backend = std::move(h);
  } else if (kind == "vpoly") {
    VPolySpec v{vector_list(field(backend, "vertices"))};
    if (v.vertices.empty()) bad("vpoly needs vertices");
    chart_for(static_cast<int>(v.vertices.front().size()));
    spec.backend = std::move(v);
  } else if (kind == "ellipsoid") {
    EllipsoidSpec e{vector_from_json(field(backend, "center")), matrix_from_json(field(backend, "shape"))};
    chart_for(static_cast<int>(e.center.size()));
    spec.backend = std::move(e);
  } else if (kind == "radialgraph") {
    RadialGraphSpec r;
    r.center = vector_from_json(field(backend, "center"));
    r.directions = vector_list(field(backend, "directions"));
    const Json& radii = field(backend, "radii");
    if (!radii.is_array()) bad("radii must be an array");
    for (const auto& e : radii) r.radii.push_back(number(e));
    if (backend.contains("faces")) r.faces = index_lists(backend.at("faces"));
    chart_for(static_cast<int>(r.center.size()));
    spec.backend = std::move(r);
  } else {
    bad("unknown backend type \"" + kind + "\"");
  }
  return spec;
}

ConvexDomain domain_from_json(const Json& j) { return ConvexDomain::build(domain_spec_from_json(j)); }

Json domain_to_json(const ConvexDomain& domain) {
  const DomainSpec spec = domain.spec();
  Json backend;
  if (const auto* h = std::get_if<HPolySpec>(&spec.backend)) {
    backend["type"] = "hpoly";
    Json normals = Json::array(), offsets = Json::array();
    for (const auto& hs : h->halfspaces) {
      normals.push_back(to_json(hs.normal));
      offsets.push_back(hs.offset);
    }
    backend["normals"] = normals;
    backend["offsets"] = offsets;
  } else if (const auto* v = std::get_if<VPolySpec>(&spec.backend)) {
    backend["type"] = "vpoly";
    Json verts = Json::array();
    for (const auto& p : v->vertices) verts.push_back(to_json(p));
    backend["vertices"] = verts;
  } else if (const auto* e = std::get_if<EllipsoidSpec>(&spec.backend)) {
    backend["type"] = "ellipsoid";
    backend["center"] = to_json(e->center);
    backend["shape"] = to_json(e->shape);
  } else if (const auto* r = std::get_if<RadialGraphSpec>(&spec.backend)) {
    backend["type"] = "radialgraph";
    backend["center"] = to_json(r->center);
    Json dirs = Json::array();
    for (const auto& d : r->directions) dirs.push_back(to_json(d));
    backend["directions"] = dirs;
    backend["radii"] = r->radii;
    backend["faces"] = r->faces;
  }
  return Json{{"chart", to_json(spec.chart.pole())}, {"backend", backend}};
}

RepSequence sequence_from_json(const Json& j) {
  RepSequence seq;
  const Json& names = field(j, "generators");
  if (!names.is_array()) bad("generators must be an array of names");
  for (const auto& n : names) {
    if (!n.is_string()) bad("generator names must be strings");
    seq.generators.push_back(n.get<std::string>());
  }
  // A trivial group may omit the terms.
  if (j.contains("terms")) {
    const Json& terms = j.at("terms");
    if (!terms.is_array()) bad("terms must be an array");
    for (const auto& t : terms) {
      auto mats = matrix_list(t);
      if (mats.size() != seq.generators.size()) bad("each term needs one matrix per generator");
      for (const auto& m : mats) {
        if (m.rows() != m.cols() || m.rows() != mats.front().rows()) bad("generator matrices must be square and equal size");
      }
      seq.terms.push_back(std::move(mats));
    }
  } else if (!seq.generators.empty()) {
    bad("missing field \"terms\"");
  }
  if (j.contains("domains")) {
    for (const auto& d : j.at("domains")) seq.domains.push_back(domain_from_json(d));
    if (!seq.terms.empty() && seq.domains.size() != seq.terms.size()) bad("domains and terms differ in length");
  }
  if (j.contains("base_domain")) {
    seq.base_domain = domain_from_json(j.at("base_domain"));
    seq.conjugators = matrix_list(field(j, "conjugators"));
    if (!seq.terms.empty() && seq.conjugators.size() != seq.terms.size()) bad("conjugators and terms differ in length");
  }
  if (seq.domains.empty() && !seq.base_domain) bad("sequence needs domains or base_domain with conjugators");
  return seq;
}

std::vector<ProjTransform> generators_from_json(const Json& j) {
  const Json& terms = field(j, "terms");
  if (!terms.is_array() || terms.size() != 1) bad("generator sets are single-term sequences");
  std::vector<ProjTransform> out;
  for (const auto& m : matrix_list(terms[0])) {
    if (m.rows() != m.cols()) bad("generator matrices must be square");
    out.emplace_back(m);
  }
  if (out.empty()) bad("no generators");
  return out;
}

SimplicialHypersurface mesh_from_json(const Json& j) {
  return {vector_list(field(j, "vertices")), index_lists(field(j, "simplices"))};
}

Json mesh_to_json(const SimplicialHypersurface& s) {
  Json verts = Json::array();
  for (const auto& v : s.vertices()) verts.push_back(to_json(v));
  return Json{{"vertices", verts}, {"simplices", s.simplices()}};
}

Json certificate_to_json(const ConvexityCertificate& c) {
  Json violations = Json::array();
  for (const auto& v : c.violations) violations.push_back({{"kind", v.kind}, {"index", v.index}, {"detail", v.detail}});
  return Json{{"certified", c.certified},
              {"global_sign", c.global_sign},
              {"margin", std::isfinite(c.margin) ? Json(c.margin) : Json(nullptr)},
              {"violations", violations}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write " + path);
  out << text;
}

Vec parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double x = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(x)) bad("bad number \"" + item + "\"");
      values.push_back(x);
    } catch (const std::logic_error&) {
      bad("bad number \"" + item + "\"");
    }
  }
  if (values.empty()) bad("empty vector");
  return Eigen::Map<Vec>(values.data(), static_cast<int>(values.size()));
}

}  // namespace pconvex
