#pragma once

namespace pconvex {

// Exact-arithmetic-level comparisons (norms, incidences).
inline constexpr double kExactTol = 1e-12;
// Matrix-level comparisons (determinants, residuals of transforms).
inline constexpr double kMatrixTol = 1e-9;
// Membership of points produced by iterative root-finding in the frontier.
inline constexpr double kFrontierTol = 1e-8;
// Half-width of the band classified as "boundary" by contains().
inline constexpr double kBoundaryBand = 1e-10;

struct Tolerances {
  double exact = kExactTol;
  double matrix = kMatrixTol;
  double frontier = kFrontierTol;
  double boundary_band = kBoundaryBand;
};

}  // namespace pconvex
