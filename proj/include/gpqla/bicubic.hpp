#pragma once

#include <array>
#include <vector>

#include "gpqla/field.hpp"

namespace gpqla {

// Values at one lattice corner: f, df/dx, df/dy, d2f/dxdy, in unit-cell coordinates.
struct CornerSample {
  double f = 0.0;
  double fx = 0.0;
  double fy = 0.0;
  double fxy = 0.0;
};

// a[i][j] multiplies x^i y^j on the unit square.
using BicubicCoefficients = std::array<std::array<double, 4>, 4>;

// corner_data layout: four blocks (f, fx, fy, fxy), each ordered by corner
// (0,0), (1,0), (0,1), (1,1).
BicubicCoefficients bicubic_cell_coefficients(const std::array<double, 16>& corner_data);

BicubicCoefficients bicubic_cell_coefficients(const CornerSample& c00, const CornerSample& c10,
                                              const CornerSample& c01, const CornerSample& c11);

double bicubic_value(const BicubicCoefficients& a, double x, double y);
double bicubic_dx(const BicubicCoefficients& a, double x, double y);
double bicubic_dy(const BicubicCoefficients& a, double x, double y);

// Periodic m x m corner lattice. corners[cy * m + cx] is the sample at corner
// (cx, cy); corner m wraps to corner 0 in both directions.
class PeriodicBicubic {
 public:
  PeriodicBicubic(int m, std::vector<CornerSample> corners);

  int m() const { return m_; }
  const BicubicCoefficients& cell(int cx, int cy) const { return cells_[cell_index(cx, cy)]; }

  // (u, v) in cell units over [0, m).
  double value(double u, double v) const;

  // Samples the surface at the sites of an L x L grid, L/m sites per cell.
  RealField sample(int L) const;

 private:
  std::size_t cell_index(int cx, int cy) const {
    return static_cast<std::size_t>(cy) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(cx);
  }

  int m_;
  std::vector<BicubicCoefficients> cells_;
};

}  // namespace gpqla
