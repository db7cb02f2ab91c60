#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gpqla/bicubic.hpp"
#include "gpqla/field.hpp"

namespace gpqla {

// Vortex core position in site units and its signed winding number.
struct VortexSpec {
  double x = 0.0;
  double y = 0.0;
  int winding = 1;
};

struct GaussianCloudParams {
  double h = 0.05;
  double a = 0.01;
  double w_g = 0.01;
};

struct RandomPhaseParams {
  int m = 8;
  std::uint64_t seed = 1;
  double amplitude = 1.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Centre of the box in site units, (L/2, L/2).
Point2 domain_center(const Grid& grid);

// psi = h exp(-a w_g r^2) prod_i tanh(sqrt(a) |r - r_i|) exp(i n_i Arg(r - r_i)),
// r in site units measured from `center` (domain centre by default).
// Rejects a nonzero winding sum and positions outside [0, L).
WaveField gaussian_vortex_state(const Grid& grid, const GaussianCloudParams& cloud,
                                const std::vector<VortexSpec>& vortices,
                                std::optional<Point2> center = std::nullopt);

// Same profile with no constraint on the winding sum, for single-vortex studies.
WaveField isolated_vortex_state(const Grid& grid, const GaussianCloudParams& cloud,
                                const VortexSpec& vortex, std::optional<Point2> center = std::nullopt);

// Four vortices on the corners of a square of side `spacing` around `center`,
// windings alternating +n, -n going round the square.
std::vector<VortexSpec> square_vortex_array(const Grid& grid, double spacing, int winding,
                                            std::optional<Point2> center = std::nullopt);

// m*m corner samples with f, fx, fy, fxy uniform in [-pi, pi] (unit-cell
// coordinates). Generator: std::mt19937_64 seeded with `seed`, one 53-bit
// draw per value, corners in row-major order, values in (f, fx, fy, fxy) order.
std::vector<CornerSample> random_corner_samples(int m, std::uint64_t seed);

// Unwrapped bicubic phase surface theta on the grid.
RealField random_phase_angle(const Grid& grid, const RandomPhaseParams& params);

// amplitude * exp(i theta) for the seeded corner data.
WaveField random_phase_state(const Grid& grid, const RandomPhaseParams& params);

// amplitude * exp(i theta) for explicit corner data.
WaveField random_phase_state(const Grid& grid, int m, const std::vector<CornerSample>& corners,
                             double amplitude);

WaveField uniform_state(const Grid& grid, Complex value);

}  // namespace gpqla
