#include "gpqla/init.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "gpqla/errors.hpp"

namespace gpqla {

namespace {

void check_cloud(const GaussianCloudParams& c) {
  if (!(c.h > 0.0)) throw ConfigError("gaussian cloud: h must be > 0");
  if (!(c.a > 0.0)) throw ConfigError("gaussian cloud: a must be > 0");
  if (!(c.w_g >= 0.0)) throw ConfigError("gaussian cloud: w_g must be >= 0");
}

void check_position(const Grid& grid, const VortexSpec& v) {
  const double L = grid.L();
  if (!(v.x >= 0.0 && v.x < L && v.y >= 0.0 && v.y < L))
    throw ConfigError("vortex at (" + std::to_string(v.x) + ", " + std::to_string(v.y) +
                      ") lies outside the domain [0, " + std::to_string(grid.L()) + ")");
}

WaveField vortex_cloud(const Grid& grid, const GaussianCloudParams& cloud,
                       const std::vector<VortexSpec>& vortices, Point2 c) {
  const int L = grid.L();
  const double sa = std::sqrt(cloud.a);
  WaveField w(grid);
  for (int y = 0; y < L; ++y) {
    for (int x = 0; x < L; ++x) {
      const double rx = x - c.x, ry = y - c.y;
      Complex v = cloud.h * std::exp(-cloud.a * cloud.w_g * (rx * rx + ry * ry));
      for (const VortexSpec& s : vortices) {
        const double dx = x - s.x, dy = y - s.y;
        const double r = std::hypot(dx, dy);
        v *= std::tanh(sa * r) * std::polar(1.0, s.winding * std::atan2(dy, dx));
      }
      w.psi(x, y) = v;
    }
  }
  return w;
}

}  // namespace

Point2 domain_center(const Grid& grid) { return {grid.L() / 2.0, grid.L() / 2.0}; }

WaveField gaussian_vortex_state(const Grid& grid, const GaussianCloudParams& cloud,
                                const std::vector<VortexSpec>& vortices,
                                std::optional<Point2> center) {
  check_cloud(cloud);
  long sum = 0;
  for (const VortexSpec& v : vortices) {
    check_position(grid, v);
    if (v.winding == 0) throw ConfigError("vortex winding must be nonzero");
    sum += v.winding;
  }
  if (sum != 0) throw ConfigError("vortex windings sum to " + std::to_string(sum) + ", expected 0");
  return vortex_cloud(grid, cloud, vortices, center.value_or(domain_center(grid)));
}

WaveField isolated_vortex_state(const Grid& grid, const GaussianCloudParams& cloud,
                                const VortexSpec& vortex, std::optional<Point2> center) {
  check_cloud(cloud);
  check_position(grid, vortex);
  return vortex_cloud(grid, cloud, {vortex}, center.value_or(domain_center(grid)));
}

std::vector<VortexSpec> square_vortex_array(const Grid& grid, double spacing, int winding,
                                            std::optional<Point2> center) {
  const Point2 c = center.value_or(domain_center(grid));
  const double s = spacing / 2.0;
  return {{c.x - s, c.y - s, winding},
          {c.x + s, c.y - s, -winding},
          {c.x + s, c.y + s, winding},
          {c.x - s, c.y + s, -winding}};
}

std::vector<CornerSample> random_corner_samples(int m, std::uint64_t seed) {
  if (m < 1) throw ConfigError("random phase: m must be >= 1");
  std::mt19937_64 gen(seed);
  auto draw = [&] {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return std::numbers::pi * (2.0 * u - 1.0);
  };
  std::vector<CornerSample> corners(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  for (CornerSample& c : corners) {
    c.f = draw();
    c.fx = draw();
    c.fy = draw();
    c.fxy = draw();
  }
  return corners;
}

RealField random_phase_angle(const Grid& grid, const RandomPhaseParams& params) {
  if (params.m < 1 || grid.L() % params.m != 0)
    throw ConfigError("random phase: m=" + std::to_string(params.m) + " must divide L=" +
                      std::to_string(grid.L()));
  return PeriodicBicubic(params.m, random_corner_samples(params.m, params.seed)).sample(grid.L());
}

WaveField random_phase_state(const Grid& grid, const RandomPhaseParams& params) {
  if (params.m < 1 || grid.L() % params.m != 0)
    throw ConfigError("random phase: m=" + std::to_string(params.m) + " must divide L=" +
                      std::to_string(grid.L()));
  return random_phase_state(grid, params.m, random_corner_samples(params.m, params.seed),
                            params.amplitude);
}

WaveField random_phase_state(const Grid& grid, int m, const std::vector<CornerSample>& corners,
                             double amplitude) {
  if (!(amplitude > 0.0)) throw ConfigError("random phase: amplitude must be > 0");
  if (m < 1 || grid.L() % m != 0)
    throw ConfigError("random phase: m=" + std::to_string(m) + " must divide L=" +
                      std::to_string(grid.L()));
  const RealField theta = PeriodicBicubic(m, corners).sample(grid.L());
  WaveField w(grid);
  for (std::size_t i = 0; i < theta.size(); ++i) w.psi[i] = std::polar(amplitude, theta[i]);
  return w;
}

WaveField uniform_state(const Grid& grid, Complex value) {
  WaveField w(grid);
  for (Complex& z : w.psi.values()) z = value;
  return w;
}

}  // namespace gpqla
