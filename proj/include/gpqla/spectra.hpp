#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpqla/field.hpp"

namespace gpqla {

// Density-weighted velocity q = sqrt(rho) v and its unnormalised DFT.
struct QField {
  Grid grid;
  RealField qx, qy;
  ComplexField qx_hat, qy_hat;
};

QField make_q_field(const Grid& grid, RealField qx, RealField qy);

struct HelmholtzSplit {
  ComplexField cx, cy;    // compressible (curl-free) part
  ComplexField icx, icy;  // incompressible (divergence-free) part
};

// Projects q_hat onto k, using the same Nyquist-free wavenumbers as the
// spectral derivatives. Modes with k=0 go entirely to the compressible part.
HelmholtzSplit helmholtz_split(const ComplexField& qx_hat, const ComplexField& qy_hat);

// 1/2 dx^2 / N sum |a_hat|^2, which equals 1/2 sum |a|^2 dx^2 by Parseval.
double spectral_energy(const Grid& grid, const ComplexField& ax_hat, const ComplexField& ay_hat);

// Shell index round(|n|) for integer mode numbers (nx, ny).
int shell_index(int nx, int ny);
int shell_count(int L);

// Energy per unit-width shell in units of k_u = 2 pi / (L dx), so the shells
// sum to spectral_energy().
std::vector<double> spectral_density(const Grid& grid, const ComplexField& ax_hat,
                                     const ComplexField& ay_hat);

struct SpectrumRecord {
  std::int64_t t = 0;
  std::vector<double> k;  // shell centres, units of k_u
  std::vector<double> eps_ic;
  std::vector<double> eps_c;
};

SpectrumRecord compute_spectrum(const QField& q, std::int64_t t = 0);

enum class SpectrumKind { ic, c };

std::string to_string(SpectrumKind kind);
SpectrumKind parse_spectrum_kind(std::string_view s);

struct PowerLawFit {
  double k_min = 0.0;
  double k_max = 0.0;
  SpectrumKind which = SpectrumKind::ic;
  double alpha = 0.0;
  double std_error = 0.0;
  int bins_used = 0;
  int bins_excluded = 0;  // zero or non-finite bins inside the window
};

// Least-squares slope of log eps against log k over k in [k_min, k_max].
// Throws ConfigError if fewer than 5 usable bins remain.
PowerLawFit fit_powerlaw(std::span<const double> k, std::span<const double> eps, double k_min,
                         double k_max);
PowerLawFit fit_powerlaw(const SpectrumRecord& spec, SpectrumKind which, double k_min, double k_max);

}  // namespace gpqla
