#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gpqla/bicubic.hpp"
#include "gpqla/diagnostics.hpp"
#include "gpqla/fft.hpp"
#include "gpqla/init.hpp"
#include "gpqla/lattice.hpp"
#include "gpqla/recurrence.hpp"
#include "gpqla/spectra.hpp"
#include "gpqla/vortex.hpp"
#include "oracle/split_step.hpp"

using namespace gpqla;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Shared by criteria 1 and 2.
struct ConservationRun {
  double density_drift = 0.0;
  double norm_drift = 0.0;
  double structure = 0.0;
  double scale = 0.0;
  double energy_drift = 0.0;
  double gamma = 0.0;
};

const ConservationRun& conservation_run() {
  static std::optional<ConservationRun> cached;
  if (cached) return *cached;
  const Grid grid(128, 0.008);
  const double g = 1.0;
  SpinorField f = SpinorField::from_wave(random_phase_state(grid, {8, 1, 1.0}));
  Stepper stepper(grid, {g});
  ConservationRun r;
  const double d0 = f.density_sum();
  const double n0 = f.norm();
  r.scale = f.max_amplitude();
  std::vector<EnergyRecord> records{energies(f.wave(), g, 0)};
  const double e0 = records.front().E_T;
  for (int t = 1; t <= 10000; ++t) {
    stepper.step(f);
    r.density_drift = std::max(r.density_drift, rel(f.density_sum(), d0));
    r.norm_drift = std::max(r.norm_drift, rel(f.norm(), n0));
    r.structure = std::max(r.structure, f.structure_defect());
    if (t % 50 == 0) {
      records.push_back(energies(f.wave(), g, t));
      r.energy_drift = std::max(r.energy_drift, rel(records.back().E_T, e0));
    }
  }
  r.gamma = gamma_ratio(records);
  cached = r;
  return *cached;
}

Outcome exact_conservation() {
  const ConservationRun& r = conservation_run();
  const bool ok = r.density_drift <= 1e-12 && r.norm_drift <= 1e-12 && r.structure <= 1e-12 * r.scale;
  return {ok, fmt("density drift %.3e, norm drift %.3e, structure defect %.3e (scale %.3g); limit 1e-12",
                  r.density_drift, r.norm_drift, r.structure, r.scale)};
}

Outcome energy_conservation() {
  const ConservationRun& r = conservation_run();
  return {r.energy_drift <= 1e-6,
          fmt("max relative E_T drift %.3e over 10000 steps (gamma %.4f); limit 1e-6", r.energy_drift,
              r.gamma)};
}

double oracle_distance(int L, double dx, double a, int steps) {
  const Grid grid(L, dx);
  const double g = 5.0;
  const WaveField psi0 = gaussian_vortex_state(grid, {0.05, a, 1.5}, square_vortex_array(grid, L / 4.0, 1));
  SpinorField f = SpinorField::from_wave(psi0);
  Stepper(grid, {g}).advance(f, steps);
  const ComplexField ref = oracle::split_step(psi0, g, steps * grid.dt(), 8 * steps);
  const WaveField out = f.wave();
  double d = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) d = std::max(d, std::abs(out.psi[i] - ref[i]));
  return d;
}

Outcome oracle_convergence() {
  const double coarse = oracle_distance(64, 0.1, 0.01, 1000);
  const double fine = oracle_distance(128, 0.05, 0.0025, 4000);
  const double ratio = coarse / fine;
  return {ratio >= 3.2 && ratio <= 4.8,
          fmt("Linf distance 64^2 %.3e, 128^2 %.3e, ratio %.3f; target [3.2, 4.8]", coarse, fine, ratio)};
}

Outcome free_dispersion() {
  const Grid grid(128, 1.0);
  const double k = 2.0 * 2.0 * std::numbers::pi / 128.0;
  WaveField w(grid);
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) w.psi(x, y) = std::polar(1.0, k * x);
  SpinorField f = SpinorField::from_wave(w);
  Stepper stepper(grid, {0.0});
  auto overlap = [&] {
    const WaveField o = f.wave();
    Complex s = 0.0;
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x) s += std::polar(1.0, -k * x) * o.psi(x, y);
    return s;
  };
  const int n = 200;
  double phase = 0.0, prev = std::arg(overlap());
  double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
  for (int t = 1; t <= n; ++t) {
    stepper.step(f);
    const double cur = std::arg(overlap());
    phase += std::remainder(cur - prev, 2.0 * std::numbers::pi);
    prev = cur;
    st += t;
    sp += phase;
    stt += double(t) * t;
    stp += t * phase;
  }
  const double rate = (n * stp - st * sp) / (n * stt - st * st);
  const double err = std::abs(rate / (-k * k) - 1.0);
  return {err <= 0.02, fmt("rate %.6e per step vs -k^2 = %.6e, relative error %.4f; limit 0.02", rate,
                           -k * k, err)};
}

Outcome parseval_split() {
  double worst_parseval = 0.0, worst_recompose = 0.0;
  int snapshots = 0;
  auto check = [&](const WaveField& w) {
    const HydroFields h = hydro_fields(w);
    const EnergyRecord e = energies(h, 1.0);
    worst_parseval = std::max(worst_parseval, std::abs(e.E_C + e.E_IC - e.E_K) / e.E_K);
    const HelmholtzSplit s = helmholtz_split(h.q.qx_hat, h.q.qy_hat);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < s.cx.size(); ++i) {
      scale = std::max({scale, std::abs(h.q.qx_hat[i]), std::abs(h.q.qy_hat[i])});
      diff = std::max({diff, std::abs(s.cx[i] + s.icx[i] - h.q.qx_hat[i]),
                       std::abs(s.cy[i] + s.icy[i] - h.q.qy_hat[i])});
    }
    worst_recompose = std::max(worst_recompose, diff / scale);
    ++snapshots;
  };
  auto run = [&](const WaveField& w0, double g, int steps, int every) {
    SpinorField f = SpinorField::from_wave(w0);
    Stepper stepper(w0.grid, {g});
    check(w0);
    for (int t = every; t <= steps; t += every) {
      stepper.advance(f, every);
      check(f.wave());
    }
  };
  const Grid vg(64, 0.1);
  run(gaussian_vortex_state(vg, {0.05, 0.01, 1.5}, square_vortex_array(vg, 16.0, 1)), 5.0, 1000, 100);
  const Grid rg(64, 0.05);
  run(random_phase_state(rg, {4, 3, 1.0}), 1.0, 1000, 100);
  return {worst_parseval <= 1e-10 && worst_recompose <= 1e-13,
          fmt("%d snapshots: max |E_C+E_IC-E_K|/E_K %.3e (limit 1e-10), recomposition %.3e (limit 1e-13)",
              snapshots, worst_parseval, worst_recompose)};
}

Outcome isolated_vortex_spectrum() {
  const Grid grid(512, 0.1);
  const WaveField w = isolated_vortex_state(grid, {1.0, 0.01, 0.04}, {256.0, 256.0, 1});
  const HydroFields h = hydro_fields(w);
  const EnergyRecord e = energies(h, 1.0);
  const PowerLawFit fit = fit_powerlaw(compute_spectrum(h.q), SpectrumKind::ic, 50.0, 100.0);
  const double ratio = e.E_C / e.E_IC;
  return {std::abs(fit.alpha + 3.0) <= 0.3 && ratio <= 1e-6,
          fmt("slope %.3f +- %.3f over k in [50, 100] (target -3.0 +- 0.3); E_C/E_IC %.3e (limit 1e-6)",
              fit.alpha, fit.std_error, ratio)};
}

RecurrenceReport vortex_recurrence(int L, double dx, double a, int steps, int every) {
  const Grid grid(L, dx);
  const double g = 5.0;
  const WaveField w = gaussian_vortex_state(grid, {0.05, a, 0.01}, square_vortex_array(grid, L / 4.0, 1));
  SpinorField f = SpinorField::from_wave(w);
  Stepper stepper(grid, {g});
  std::vector<EnergyRecord> series{energies(w, g, 0)};
  for (int t = every; t <= steps; t += every) {
    stepper.advance(f, every);
    series.push_back(energies(f.wave(), g, t));
  }
  return detect_recurrence(series);
}

Outcome recurrence_scaling() {
  const RecurrenceReport small = vortex_recurrence(64, 0.8, 0.64, 1000, 1);
  const RecurrenceReport large = vortex_recurrence(128, 0.4, 0.16, 3600, 2);
  auto pair = [](const RecurrenceReport& r) {
    return r.estimate_source == "E_I" && r.t_p_half && r.t_p;
  };
  auto show = [](const std::optional<std::int64_t>& v) { return v ? static_cast<long long>(*v) : -1LL; };
  const bool both = pair(small) && pair(large);
  const double ratio = both ? static_cast<double>(*large.t_p) / static_cast<double>(*small.t_p) : 0.0;
  return {both && ratio >= 3.6 && ratio <= 4.4,
          fmt("64^2 E_I peaks T/2=%lld T=%lld; 128^2 T/2=%lld T=%lld; T ratio %.3f (target [3.6, 4.4])",
              show(small.t_p_half), show(small.t_p), show(large.t_p_half), show(large.t_p), ratio)};
}

Outcome winding_two_split() {
  const Grid grid(128, 0.4);
  const double g = 5.0;
  const WaveField w = gaussian_vortex_state(grid, {0.05, 0.16, 0.01},
                                            square_vortex_array(grid, 2.0 * 128 / 11.0, 2, Point2{64.3, 64.2}));
  auto all_unit = [](const VortexSet& s) {
    return std::all_of(s.vortices.begin(), s.vortices.end(), [](const Vortex& v) { return std::abs(v.w) == 1; });
  };
  const VortexSet start = merge_touching(detect_vortices(w, 0), 128);
  const bool doubled_start = std::all_of(start.vortices.begin(), start.vortices.end(),
                                         [](const Vortex& v) { return std::abs(v.w) == 2; });
  SpinorField f = SpinorField::from_wave(w);
  Stepper stepper(grid, {g});
  std::optional<int> split_at;
  for (int t = 5; t <= 500 && !split_at; t += 5) {
    stepper.advance(f, 5);
    const VortexSet raw = detect_vortices(f.wave(), t);
    const VortexSet cores = merge_touching(raw, 128);
    if (raw.count() == 8 && cores.count() == 8 && all_unit(cores)) split_at = t;
  }
  return {start.count() == 4 && doubled_start && split_at.has_value(),
          fmt("t=0: %d cores%s; 8 unit-winding cores first seen at t=%d (limit 500)", start.count(),
              doubled_start ? " of winding 2" : " (not all winding 2)", split_at.value_or(-1))};
}

Outcome spectral_slope_regime() {
  const Grid grid(256, 0.05);
  const double g = 1.0;
  const double k_xi = grid.extent() * std::sqrt(g);
  const double k_min = 0.8 * k_xi, k_max = 1.25 * k_xi;
  SpinorField f = SpinorField::from_wave(random_phase_state(grid, {4, 1, 1.0}));
  Stepper stepper(grid, {g});
  std::vector<EnergyRecord> records;
  std::vector<double> alphas;
  for (int t = 0; t <= 3000; t += 50) {
    if (t > 0) stepper.advance(f, 50);
    const WaveField w = f.wave();
    const HydroFields h = hydro_fields(w);
    records.push_back(energies(h, g, t));
    if (t < 500) continue;
    if (detect_vortices(w, t).count() == 0) continue;
    alphas.push_back(fit_powerlaw(compute_spectrum(h.q, t), SpectrumKind::ic, k_min, k_max).alpha);
  }
  const double gamma = gamma_ratio(records);
  double mean = 0.0, var = 0.0;
  for (double a : alphas) mean += a;
  mean /= std::max<std::size_t>(alphas.size(), 1);
  for (double a : alphas) var += (a - mean) * (a - mean);
  const double sd = alphas.size() > 1 ? std::sqrt(var / (alphas.size() - 1)) : 0.0;
  const bool ok = !alphas.empty() && gamma >= 0.3 && gamma <= 3.0 && mean >= -4.8 && mean <= -3.4;
  return {ok, fmt("gamma %.3f (regime [0.3, 3]); <alpha> = %.3f +- %.3f over %zu snapshots, k in [%.1f, %.1f] "
                  "(target [-4.8, -3.4])",
                  gamma, mean, sd, alphas.size(), k_min, k_max)};
}

double bicubic_dxy(const BicubicCoefficients& a, double x, double y) {
  double s = 0.0;
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) s += i * j * a[i][j] * std::pow(x, i - 1) * std::pow(y, j - 1);
  return s;
}

Outcome bicubic_properties() {
  const int m = 100;
  const std::vector<CornerSample> corners = random_corner_samples(m, 20240601);
  const PeriodicBicubic field(m, corners);
  auto at = [&](int cx, int cy) -> const CornerSample& {
    return corners[static_cast<std::size_t>(wrap_index(cy, m) * m + wrap_index(cx, m))];
  };
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double corner_err = 0.0, edge_err = 0.0, period_err = 0.0;
  for (int cy = 0; cy < m; ++cy)
    for (int cx = 0; cx < m; ++cx) {
      const BicubicCoefficients& c = field.cell(cx, cy);
      for (int corner = 0; corner < 4; ++corner) {
        const int ox = corner & 1, oy = corner >> 1;
        const CornerSample& s = at(cx + ox, cy + oy);
        corner_err = std::max({corner_err, std::abs(bicubic_value(c, ox, oy) - s.f),
                               std::abs(bicubic_dx(c, ox, oy) - s.fx), std::abs(bicubic_dy(c, ox, oy) - s.fy),
                               std::abs(bicubic_dxy(c, ox, oy) - s.fxy)});
      }
      const BicubicCoefficients& right = field.cell(wrap_index(cx + 1, m), cy);
      const BicubicCoefficients& up = field.cell(cx, wrap_index(cy + 1, m));
      const double s = unit(gen);
      edge_err = std::max({edge_err, std::abs(bicubic_value(c, 1, s) - bicubic_value(right, 0, s)),
                           std::abs(bicubic_dx(c, 1, s) - bicubic_dx(right, 0, s)),
                           std::abs(bicubic_dy(c, 1, s) - bicubic_dy(right, 0, s)),
                           std::abs(bicubic_value(c, s, 1) - bicubic_value(up, s, 0)),
                           std::abs(bicubic_dx(c, s, 1) - bicubic_dx(up, s, 0)),
                           std::abs(bicubic_dy(c, s, 1) - bicubic_dy(up, s, 0))});
      const double u = cx + unit(gen), v = cy + unit(gen);
      period_err = std::max({period_err, std::abs(field.value(u + m, v) - field.value(u, v)),
                             std::abs(field.value(u, v - m) - field.value(u, v))});
    }
  return {corner_err <= 1e-12 && edge_err <= 1e-10 && period_err <= 1e-10,
          fmt("%d cells: corner mismatch %.3e (limit 1e-12), edge jump %.3e incl. seam (limit 1e-10), "
              "period shift %.3e (limit 1e-10)",
              m * m, corner_err, edge_err, period_err)};
}

std::pair<RecurrenceReport, double> random_phase_recurrence(double dx) {
  const Grid grid(128, dx);
  const double g = 1.0;
  SpinorField f = SpinorField::from_wave(random_phase_state(grid, {8, 1, 1.0}));
  Stepper stepper(grid, {g});
  std::vector<EnergyRecord> series;
  for (int t = 0; t <= 3000; t += 10) {
    if (t > 0) stepper.advance(f, 10);
    series.push_back(energies(f.wave(), g, t));
  }
  return {detect_recurrence(series), gamma_ratio(series)};
}

Outcome loss_of_recurrence() {
  const auto [low, gamma_low] = random_phase_recurrence(0.008);
  const auto [high, gamma_high] = random_phase_recurrence(0.05);
  auto events = [](const RecurrenceReport& r) {
    return fmt("%zu E_I peaks, %zu E_IC dips, %zu Z dips", r.ei_peaks.size(), r.eic_dips.size(), r.z_dips.size());
  };
  const bool ok = gamma_low <= 0.01 && gamma_high >= 0.1 && !low.empty() && high.empty();
  return {ok, fmt("low gamma %.4f: %s; high gamma %.4f: %s", gamma_low, events(low).c_str(), gamma_high,
                  events(high).c_str())};
}

const std::map<int, std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::map<int, std::pair<const char*, std::function<Outcome()>>> table = {
      {1, {"exact conservation", exact_conservation}},
      {2, {"energy conservation", energy_conservation}},
      {3, {"split-step oracle convergence", oracle_convergence}},
      {4, {"free dispersion", free_dispersion}},
      {5, {"Parseval split", parseval_split}},
      {6, {"isolated vortex spectrum", isolated_vortex_spectrum}},
      {7, {"recurrence scaling", recurrence_scaling}},
      {8, {"winding-2 splitting", winding_two_split}},
      {9, {"spectral slope regime", spectral_slope_regime}},
      {10, {"bicubic properties", bicubic_properties}},
      {11, {"loss of recurrence", loss_of_recurrence}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criterion number(s); all when omitted")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty())
    for (const auto& [n, _] : criteria()) selected.push_back(n);

  int failures = 0;
  for (int n : selected) {
    const auto& [name, check] = criteria().at(n);
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %2d %s  %s: %s\n", n, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
