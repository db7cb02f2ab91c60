#include "gpqla/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpqla/errors.hpp"
#include "gpqla/fft.hpp"
#include "parallel.hpp"

namespace gpqla {

namespace {

// i k_x f_hat and i k_y f_hat transformed back to real space.
std::pair<ComplexField, ComplexField> gradient(const Grid& grid, const ComplexField& f_hat) {
  const int L = grid.L();
  const std::vector<double> k = derivative_wavenumbers(grid);
  ComplexField gx(L), gy(L);
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x) {
      const Complex ikf = Complex(0.0, 1.0) * f_hat(x, y);
      gx(x, y) = k[static_cast<std::size_t>(x)] * ikf;
      gy(x, y) = k[static_cast<std::size_t>(y)] * ikf;
    }
  return {inverse_fft2(gx), inverse_fft2(gy)};
}

double field_sum(const RealField& f) {
  const int L = f.L();
  return detail::row_sum(L, [&](int y) {
    double s = 0.0;
    for (double v : f.row(y)) s += v;
    return s;
  });
}

}  // namespace

HydroFields hydro_fields(const WaveField& psi) {
  const Grid& grid = psi.grid;
  const int L = grid.L();
  const auto [gx, gy] = gradient(grid, fft2(psi.psi));

  HydroFields h;
  h.grid = grid;
  h.rho = RealField(L);
  h.sqrt_rho = RealField(L);
  h.jx = RealField(L);
  h.jy = RealField(L);
  h.grad_sqrt_rho_x = RealField(L);
  h.grad_sqrt_rho_y = RealField(L);

  for (std::size_t i = 0; i < psi.psi.size(); ++i) {
    h.rho[i] = std::norm(psi.psi[i]);
    h.sqrt_rho[i] = std::abs(psi.psi[i]);
  }
  const double floor = 1e-15 * field_sum(h.sqrt_rho) / static_cast<double>(grid.sites());

  RealField qx(L), qy(L);
  for (std::size_t i = 0; i < psi.psi.size(); ++i) {
    const Complex cx = std::conj(psi.psi[i]) * gx[i];
    const Complex cy = std::conj(psi.psi[i]) * gy[i];
    const double s = std::max(h.sqrt_rho[i], floor);
    h.jx[i] = 2.0 * cx.imag();
    h.jy[i] = 2.0 * cy.imag();
    qx[i] = s > 0.0 ? h.jx[i] / s : 0.0;
    qy[i] = s > 0.0 ? h.jy[i] / s : 0.0;
    h.grad_sqrt_rho_x[i] = s > 0.0 ? cx.real() / s : 0.0;
    h.grad_sqrt_rho_y[i] = s > 0.0 ? cy.real() / s : 0.0;
  }
  h.q = make_q_field(grid, std::move(qx), std::move(qy));

  const std::vector<double> k = derivative_wavenumbers(grid);
  ComplexField curl(L);
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x)
      curl(x, y) = Complex(0.0, 1.0) * (k[static_cast<std::size_t>(x)] * h.q.qy_hat(x, y) -
                                        k[static_cast<std::size_t>(y)] * h.q.qx_hat(x, y));
  const ComplexField omega = inverse_fft2(curl);
  h.omega_q = RealField(L);
  for (std::size_t i = 0; i < omega.size(); ++i) h.omega_q[i] = omega[i].real();
  return h;
}

double enstrophy(const HydroFields& h) {
  const int L = h.grid.L();
  return h.grid.dt() * detail::row_sum(L, [&](int y) {
           double s = 0.0;
           for (double w : h.omega_q.row(y)) s += w * w;
           return s;
         });
}

EnergyRecord energies(const HydroFields& h, double g, std::int64_t t) {
  const int L = h.grid.L();
  const double area = h.grid.dt();
  EnergyRecord r;
  r.t = t;
  r.E_K = 0.5 * area * detail::row_sum(L, [&](int y) {
            double s = 0.0;
            auto ax = h.q.qx.row(y), ay = h.q.qy.row(y);
            for (int x = 0; x < L; ++x) s += ax[x] * ax[x] + ay[x] * ay[x];
            return s;
          });
  r.E_I = g * area * detail::row_sum(L, [&](int y) {
            double s = 0.0;
            for (double v : h.rho.row(y)) s += v * v;
            return s;
          });
  r.E_Q = 2.0 * area * detail::row_sum(L, [&](int y) {
            double s = 0.0;
            auto ax = h.grad_sqrt_rho_x.row(y), ay = h.grad_sqrt_rho_y.row(y);
            for (int x = 0; x < L; ++x) s += ax[x] * ax[x] + ay[x] * ay[x];
            return s;
          });
  r.E_T = r.E_K + r.E_I + r.E_Q;
  const HelmholtzSplit split = helmholtz_split(h.q.qx_hat, h.q.qy_hat);
  r.E_C = spectral_energy(h.grid, split.cx, split.cy);
  r.E_IC = spectral_energy(h.grid, split.icx, split.icy);
  r.Z = enstrophy(h);
  return r;
}

EnergyRecord energies(const WaveField& psi, double g, std::int64_t t) {
  return energies(hydro_fields(psi), g, t);
}

double gamma_ratio(std::span<const EnergyRecord> records) {
  if (records.empty()) throw ConfigError("gamma_ratio: no records");
  double sum = 0.0;
  for (const EnergyRecord& r : records) {
    if (!(r.E_K > 0.0))
      throw NumericalError("gamma_ratio: E_K = 0 at t=" + std::to_string(r.t));
    sum += r.E_I / r.E_K;
  }
  return sum / static_cast<double>(records.size());
}

}  // namespace gpqla
