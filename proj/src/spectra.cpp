#include "gpqla/spectra.hpp"

#include <cmath>

#include "gpqla/errors.hpp"
#include "gpqla/fft.hpp"

namespace gpqla {

namespace {

ComplexField complexify(const RealField& f) {
  ComplexField c(f.L());
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
  return c;
}

}  // namespace

QField make_q_field(const Grid& grid, RealField qx, RealField qy) {
  if (qx.L() != grid.L() || qy.L() != grid.L()) throw ConfigError("q field size does not match grid");
  ComplexField xh = fft2(complexify(qx));
  ComplexField yh = fft2(complexify(qy));
  return QField{grid, std::move(qx), std::move(qy), std::move(xh), std::move(yh)};
}

HelmholtzSplit helmholtz_split(const ComplexField& qx_hat, const ComplexField& qy_hat) {
  const int L = qx_hat.L();
  if (qy_hat.L() != L) throw ConfigError("helmholtz_split: component sizes differ");
  const std::vector<int> n = derivative_mode_numbers(L);
  HelmholtzSplit s{ComplexField(L), ComplexField(L), ComplexField(L), ComplexField(L)};
  for (int y = 0; y < L; ++y) {
    const double ky = n[static_cast<std::size_t>(y)];
    for (int x = 0; x < L; ++x) {
      const double kx = n[static_cast<std::size_t>(x)];
      const Complex ax = qx_hat(x, y), ay = qy_hat(x, y);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) {
        s.cx(x, y) = ax;
        s.cy(x, y) = ay;
        continue;
      }
      const Complex proj = (kx * ax + ky * ay) / k2;
      s.cx(x, y) = proj * kx;
      s.cy(x, y) = proj * ky;
      s.icx(x, y) = ax - s.cx(x, y);
      s.icy(x, y) = ay - s.cy(x, y);
    }
  }
  return s;
}

double spectral_energy(const Grid& grid, const ComplexField& ax, const ComplexField& ay) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) sum += std::norm(ax[i]) + std::norm(ay[i]);
  return 0.5 * grid.dt() / static_cast<double>(grid.sites()) * sum;
}

int shell_index(int nx, int ny) {
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(nx * nx + ny * ny)) + 0.5));
}

int shell_count(int L) { return shell_index(L / 2, L / 2) + 1; }

std::vector<double> spectral_density(const Grid& grid, const ComplexField& ax,
                                     const ComplexField& ay) {
  const int L = grid.L();
  const std::vector<int> n = mode_numbers(L);
  std::vector<double> eps(static_cast<std::size_t>(shell_count(L)), 0.0);
  const double norm = 0.5 * grid.dt() / static_cast<double>(grid.sites());
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x) {
      const auto j = static_cast<std::size_t>(
          shell_index(n[static_cast<std::size_t>(x)], n[static_cast<std::size_t>(y)]));
      eps[j] += norm * (std::norm(ax(x, y)) + std::norm(ay(x, y)));
    }
  return eps;
}

SpectrumRecord compute_spectrum(const QField& q, std::int64_t t) {
  const HelmholtzSplit s = helmholtz_split(q.qx_hat, q.qy_hat);
  SpectrumRecord r;
  r.t = t;
  r.eps_ic = spectral_density(q.grid, s.icx, s.icy);
  r.eps_c = spectral_density(q.grid, s.cx, s.cy);
  r.k.resize(r.eps_ic.size());
  for (std::size_t j = 0; j < r.k.size(); ++j) r.k[j] = static_cast<double>(j);
  return r;
}

std::string to_string(SpectrumKind kind) { return kind == SpectrumKind::ic ? "ic" : "c"; }

SpectrumKind parse_spectrum_kind(std::string_view s) {
  if (s == "ic") return SpectrumKind::ic;
  if (s == "c") return SpectrumKind::c;
  throw ConfigError("spectrum kind must be 'ic' or 'c', got '" + std::string(s) + "'");
}

PowerLawFit fit_powerlaw(std::span<const double> k, std::span<const double> eps, double k_min,
                         double k_max) {
  if (!(k_min < k_max)) throw ConfigError("fit window requires k_min < k_max");
  if (k.size() != eps.size()) throw ConfigError("fit: k and eps sizes differ");
  PowerLawFit fit;
  fit.k_min = k_min;
  fit.k_max = k_max;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < k_min || k[i] > k_max) continue;
    if (k[i] > 0.0 && eps[i] > 0.0 && std::isfinite(eps[i])) {
      lx.push_back(std::log(k[i]));
      ly.push_back(std::log(eps[i]));
    } else {
      ++fit.bins_excluded;
    }
  }
  const auto n = static_cast<int>(lx.size());
  if (n < 5)
    throw ConfigError("fit window [" + std::to_string(k_min) + ", " + std::to_string(k_max) +
                      "] has " + std::to_string(n) + " usable bins, need at least 5");
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ly[i] - (my + slope * (lx[i] - mx));
    ssr += r * r;
  }
  fit.alpha = slope;
  fit.std_error = std::sqrt(ssr / (n - 2) / sxx);
  fit.bins_used = n;
  return fit;
}

PowerLawFit fit_powerlaw(const SpectrumRecord& spec, SpectrumKind which, double k_min,
                         double k_max) {
  PowerLawFit f =
      fit_powerlaw(spec.k, which == SpectrumKind::ic ? spec.eps_ic : spec.eps_c, k_min, k_max);
  f.which = which;
  return f;
}

}  // namespace gpqla
