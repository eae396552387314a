#include "pconvex/svg.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace pconvex {

namespace {

Vec planar(const Vec& z) {
  Vec p = Vec::Zero(2);
  p[0] = z[0];
  if (z.size() > 1) p[1] = z[1];
  return p;
}

}  // namespace

SvgFigure::SvgFigure(const ConvexDomain& domain, int boundary_samples) {
  if (domain.dim() > 2) throw Error(ErrorCode::kInvalidInput, "figures are drawn for chart dimension <= 2 only");
  for (const auto& z : domain.boundary_samples(boundary_samples)) boundary_.push_back(planar(z));
}

void SvgFigure::add_polyline(const std::vector<Vec>& points, const std::string& color) {
  std::vector<Vec> flat;
  for (const auto& p : points) flat.push_back(planar(p));
  layers_.push_back({std::move(flat), color, true});
}

void SvgFigure::add_points(const std::vector<Vec>& points, const std::string& color) {
  std::vector<Vec> flat;
  for (const auto& p : points) flat.push_back(planar(p));
  layers_.push_back({std::move(flat), color, false});
}

std::string SvgFigure::render(int pixels) const {
  Vec lo = Vec::Constant(2, std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  auto grow = [&](const Vec& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  };
  for (const auto& p : boundary_) grow(p);
  for (const auto& l : layers_) {
    for (const auto& p : l.points) grow(p);
  }
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-9});
  const double pad = 0.05 * span;
  const double scale = pixels / (span + 2 * pad);
  auto x = [&](const Vec& p) { return (p[0] - lo[0] + pad) * scale; };
  auto y = [&](const Vec& p) { return pixels - (p[1] - lo[1] + pad) * scale; };

  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels << "\" height=\"" << pixels
      << "\" viewBox=\"0 0 " << pixels << ' ' << pixels << "\">\n";
  out << "<polygon fill=\"#eef3f8\" stroke=\"#34495e\" stroke-width=\"1.5\" points=\"";
  for (const auto& p : boundary_) out << x(p) << ',' << y(p) << ' ';
  out << "\"/>\n";
  for (const auto& l : layers_) {
    if (l.polyline) {
      out << "<polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& p : l.points) out << x(p) << ',' << y(p) << ' ';
      out << "\"/>\n";
    } else {
      for (const auto& p : l.points) {
        out << "<circle cx=\"" << x(p) << "\" cy=\"" << y(p) << "\" r=\"2.5\" fill=\"" << l.color << "\"/>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pconvex
