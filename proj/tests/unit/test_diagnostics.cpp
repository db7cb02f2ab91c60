#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gpqla/diagnostics.hpp"
#include "gpqla/errors.hpp"
#include "gpqla/init.hpp"
#include "gpqla/lattice.hpp"

using namespace gpqla;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

WaveField vortex_pair(const Grid& grid) {
  return gaussian_vortex_state(grid, {0.5, 0.04, 0.02},
                               {{grid.L() * 0.35, grid.L() * 0.45, 1}, {grid.L() * 0.62, grid.L() * 0.55, -1}});
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("uniform state") {
    const Grid grid(32, 0.2);
    const Complex c(0.3, 0.4);
    const WaveField w = uniform_state(grid, c);
    const HydroFields h = hydro_fields(w);
    for (std::size_t i = 0; i < h.rho.size(); ++i) {
      CHECK(h.rho[i] == doctest::Approx(0.25));
      CHECK(std::abs(h.jx[i]) < 1e-15);
      CHECK(std::abs(h.omega_q[i]) < 1e-15);
    }
    const double g = 2.0;
    const EnergyRecord e = energies(w, g);
    CHECK(std::abs(e.E_K) < 1e-28);
    CHECK(std::abs(e.E_Q) < 1e-28);
    CHECK(rel(e.E_I, g * std::pow(std::norm(c), 2) * 32 * 32 * 0.04) < 1e-14);
    CHECK(std::abs(enstrophy(h)) < 1e-28);
  }

  TEST_CASE("plane wave momentum density") {
    const Grid grid(64, 0.25);
    const int mode = 3;
    const double k = 2 * std::numbers::pi * mode / grid.extent();
    WaveField w(grid);
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x) w.psi(x, y) = std::polar(1.0, k * x * grid.dx());
    const HydroFields h = hydro_fields(w);
    for (std::size_t i = 0; i < h.rho.size(); ++i) {
      CHECK(std::abs(h.rho[i] - 1.0) < 1e-14);
      CHECK(std::abs(h.jx[i] - 2 * k) < 1e-12);
      CHECK(std::abs(h.jy[i]) < 1e-12);
    }
    const EnergyRecord e = energies(w, 0.0);
    CHECK(rel(e.E_K, 0.5 * 4 * k * k * grid.extent() * grid.extent()) < 1e-12);
    CHECK(std::abs(e.E_IC) < 1e-12 * e.E_K);
  }

  TEST_CASE("vorticity concentrates at cores with the winding's sign") {
    const Grid grid(64, 0.5);
    const WaveField w = gaussian_vortex_state(grid, {1.0, 0.3, 0.0}, {{20.5, 40.5, 1}, {44.5, 24.5, -1}});
    const HydroFields h = hydro_fields(w);
    double scale = 0.0;
    for (double v : h.omega_q.values()) scale = std::max(scale, std::abs(v));
    auto local_peak = [&](int cx, int cy) {
      double best = 0.0;
      for (int y = cy - 1; y <= cy + 2; ++y)
        for (int x = cx - 1; x <= cx + 2; ++x)
          if (std::abs(h.omega_q(x, y)) > std::abs(best)) best = h.omega_q(x, y);
      return best;
    };
    CHECK(local_peak(20, 40) > 0.5 * scale);
    CHECK(local_peak(44, 24) < -0.5 * scale);
    CHECK(std::abs(h.omega_q(5, 5)) < 1e-3 * scale);
  }

  TEST_CASE("energy closure and Parseval split") {
    const Grid grid(64, 0.3);
    const EnergyRecord e = energies(vortex_pair(grid), 4.0);
    CHECK(e.E_T == e.E_K + e.E_I + e.E_Q);
    CHECK(rel(e.E_C + e.E_IC, e.E_K) < 1e-10);
  }

  TEST_CASE("free evolution conserves E_T exactly as quadrature") {
    const Grid grid(64, 0.3);
    SpinorField s = SpinorField::from_wave(vortex_pair(grid));
    const double e0 = energies(s.wave(), 0.0).E_T;
    Stepper st(grid, {0.0});
    st.advance(s, 50);
    CHECK(rel(energies(s.wave(), 0.0).E_T, e0) < 1e-3);
  }

  TEST_CASE("gauge invariance") {
    const Grid grid(32, 0.4);
    WaveField w = vortex_pair(grid);
    const EnergyRecord a = energies(w, 2.0);
    for (Complex& z : w.psi.values()) z *= std::polar(1.0, 1.234);
    const EnergyRecord b = energies(w, 2.0);
    for (auto [x, y] : {std::pair{a.E_K, b.E_K}, {a.E_I, b.E_I}, {a.E_Q, b.E_Q}, {a.E_C, b.E_C},
                        {a.E_IC, b.E_IC}, {a.Z, b.Z}})
      CHECK(std::abs(x - y) <= 1e-13 * std::max(std::abs(x), 1e-300) + 1e-300);
  }

  TEST_CASE("mirror flips vorticity and keeps enstrophy") {
    const Grid grid(32, 0.4);
    const WaveField w = vortex_pair(grid);
    WaveField m(grid);
    for (int y = 0; y < 32; ++y)
      for (int x = 0; x < 32; ++x) m.psi(x, y) = w.psi((32 - x) % 32, y);
    const HydroFields hw = hydro_fields(w), hm = hydro_fields(m);
    double scale = 0.0;
    for (double v : hw.omega_q.values()) scale = std::max(scale, std::abs(v));
    for (int y = 0; y < 32; ++y)
      for (int x = 0; x < 32; ++x)
        CHECK(std::abs(hm.omega_q(x, y) + hw.omega_q((32 - x) % 32, y)) < 1e-12 * scale);
    CHECK(rel(enstrophy(hm), enstrophy(hw)) < 1e-12);
  }

  TEST_CASE("gamma ratio") {
    std::vector<EnergyRecord> r(3);
    for (auto& x : r) {
      x.E_K = 2.0;
      x.E_I = 0.5;
    }
    CHECK(gamma_ratio(r) == doctest::Approx(0.25));
    r[1].E_K = 0.0;
    CHECK_THROWS_AS(gamma_ratio(r), NumericalError);
    CHECK_THROWS_AS(gamma_ratio({}), ConfigError);
  }
}
