#pragma once

#include <cstdint>
#include <span>

#include "gpqla/field.hpp"
#include "gpqla/spectra.hpp"

namespace gpqla {

// Hydrodynamic fields of psi. All gradients are spectral.
struct HydroFields {
  Grid grid;
  RealField rho;
  RealField sqrt_rho;
  RealField jx, jy;          // momentum density 2 Im(psi* grad psi)
  RealField grad_sqrt_rho_x;  // Re(psi* grad psi) / sqrt(rho)
  RealField grad_sqrt_rho_y;
  QField q;                  // j / sqrt(rho), regularised at cores
  RealField omega_q;         // z-component of curl q
};

HydroFields hydro_fields(const WaveField& psi);

struct EnergyRecord {
  std::int64_t t = 0;
  double E_T = 0.0;
  double E_K = 0.0;
  double E_I = 0.0;
  double E_Q = 0.0;
  double E_C = 0.0;
  double E_IC = 0.0;
  double Z = 0.0;
  double gamma_running = 0.0;
};

EnergyRecord energies(const HydroFields& h, double g, std::int64_t t = 0);
EnergyRecord energies(const WaveField& psi, double g, std::int64_t t = 0);

double enstrophy(const HydroFields& h);

// Mean of E_I / E_K over the records.
double gamma_ratio(std::span<const EnergyRecord> records);

}  // namespace gpqla
