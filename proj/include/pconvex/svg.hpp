#pragma once

// Static SVG figures for domains with chart dimension 1 or 2.

#include <string>
#include <vector>

#include "pconvex/domain.hpp"

namespace pconvex {

class SvgFigure {
 public:
  // Throws kInvalidInput for chart dimension above 2.
  explicit SvgFigure(const ConvexDomain& domain, int boundary_samples = 256);

  void add_polyline(const std::vector<Vec>& points, const std::string& color = "#c0392b");
  void add_points(const std::vector<Vec>& points, const std::string& color = "#2c3e50");
  std::string render(int pixels = 480) const;

 private:
  struct Layer {
    std::vector<Vec> points;
    std::string color;
    bool polyline;
  };
  std::vector<Vec> boundary_;
  std::vector<Layer> layers_;
};

}  // namespace pconvex
