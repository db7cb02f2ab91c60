#include "gpqla/bicubic.hpp"

#include <cmath>
#include <string>

#include "gpqla/errors.hpp"

namespace gpqla {

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

// Maps corner data to cubic Hermite coefficients along one axis.
constexpr Mat4 kHermite = {{{1, 0, 0, 0}, {0, 0, 1, 0}, {-3, 3, -2, -1}, {2, -2, 1, 1}}};

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Mat4 transpose(const Mat4& a) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[j][i];
  return r;
}

}  // namespace

BicubicCoefficients bicubic_cell_coefficients(const std::array<double, 16>& d) {
  const double* f = d.data();
  const double* fx = f + 4;
  const double* fy = f + 8;
  const double* fxy = f + 12;
  // Corner k: 0=(0,0) 1=(1,0) 2=(0,1) 3=(1,1). Rows follow x, columns follow y.
  const Mat4 F = {{{f[0], f[2], fy[0], fy[2]},
                   {f[1], f[3], fy[1], fy[3]},
                   {fx[0], fx[2], fxy[0], fxy[2]},
                   {fx[1], fx[3], fxy[1], fxy[3]}}};
  return multiply(multiply(kHermite, F), transpose(kHermite));
}

BicubicCoefficients bicubic_cell_coefficients(const CornerSample& c00, const CornerSample& c10,
                                              const CornerSample& c01, const CornerSample& c11) {
  return bicubic_cell_coefficients({c00.f, c10.f, c01.f, c11.f, c00.fx, c10.fx, c01.fx, c11.fx,
                                    c00.fy, c10.fy, c01.fy, c11.fy, c00.fxy, c10.fxy, c01.fxy,
                                    c11.fxy});
}

double bicubic_value(const BicubicCoefficients& a, double x, double y) {
  double r = 0.0;
  for (int i = 3; i >= 0; --i) {
    const double row = ((a[i][3] * y + a[i][2]) * y + a[i][1]) * y + a[i][0];
    r = r * x + row;
  }
  return r;
}

double bicubic_dx(const BicubicCoefficients& a, double x, double y) {
  double r = 0.0;
  for (int i = 3; i >= 1; --i) {
    const double row = ((a[i][3] * y + a[i][2]) * y + a[i][1]) * y + a[i][0];
    r = r * x + i * row;
  }
  return r;
}

double bicubic_dy(const BicubicCoefficients& a, double x, double y) {
  double r = 0.0;
  for (int i = 3; i >= 0; --i) {
    const double row = (3 * a[i][3] * y + 2 * a[i][2]) * y + a[i][1];
    r = r * x + row;
  }
  return r;
}

PeriodicBicubic::PeriodicBicubic(int m, std::vector<CornerSample> corners) : m_(m) {
  if (m < 1) throw ConfigError("bicubic: m must be >= 1");
  if (corners.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m))
    throw ConfigError("bicubic: expected " + std::to_string(m * m) + " corner samples");
  cells_.resize(corners.size());
  auto at = [&](int cx, int cy) -> const CornerSample& {
    return corners[cell_index(wrap_index(cx, m), wrap_index(cy, m))];
  };
  for (int cy = 0; cy < m; ++cy)
    for (int cx = 0; cx < m; ++cx)
      cells_[cell_index(cx, cy)] =
          bicubic_cell_coefficients(at(cx, cy), at(cx + 1, cy), at(cx, cy + 1), at(cx + 1, cy + 1));
}

double PeriodicBicubic::value(double u, double v) const {
  const double m = m_;
  u -= m * std::floor(u / m);
  v -= m * std::floor(v / m);
  const int cx = std::min(static_cast<int>(u), m_ - 1);
  const int cy = std::min(static_cast<int>(v), m_ - 1);
  return bicubic_value(cell(cx, cy), u - cx, v - cy);
}

RealField PeriodicBicubic::sample(int L) const {
  if (L % m_ != 0)
    throw ConfigError("bicubic: m=" + std::to_string(m_) + " does not divide L=" + std::to_string(L));
  const int cs = L / m_;
  RealField out(L);
  for (int y = 0; y < L; ++y) {
    const int cy = y / cs;
    const double v = static_cast<double>(y % cs) / cs;
    for (int x = 0; x < L; ++x) {
      const int cx = x / cs;
      const double u = static_cast<double>(x % cs) / cs;
      out(x, y) = bicubic_value(cell(cx, cy), u, v);
    }
  }
  return out;
}

}  // namespace gpqla
