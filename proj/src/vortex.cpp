#include "gpqla/vortex.hpp"

#include <cmath>
#include <cstdlib>
#include <algorithm>
#include <numbers>

namespace gpqla {

int VortexSet::total_circulation() const {
  int s = 0;
  for (const Vortex& v : vortices) s += v.w;
  return s;
}

int VortexSet::abs_circulation() const {
  int s = 0;
  for (const Vortex& v : vortices) s += std::abs(v.w);
  return s;
}

RealField phase_field(const WaveField& psi) {
  RealField theta(psi.psi.L());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double a = std::arg(psi.psi[i]);
    theta[i] = a == -std::numbers::pi ? std::numbers::pi : a;
  }
  return theta;
}

double wrap_phase(double d) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(d, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double plaquette_circulation(const RealField& theta, int i, int j) {
  const int L = theta.L();
  const int i1 = wrap_index(i + 1, L), j1 = wrap_index(j + 1, L);
  const double a = theta(i, j), b = theta(i1, j), c = theta(i1, j1), d = theta(i, j1);
  return wrap_phase(b - a) + wrap_phase(c - b) + wrap_phase(d - c) + wrap_phase(a - d);
}

VortexSet detect_vortices(const WaveField& psi, std::int64_t t) {
  const RealField theta = phase_field(psi);
  const int L = theta.L();
  VortexSet set;
  set.t = t;
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const auto w = static_cast<int>(
          std::lround(plaquette_circulation(theta, i, j) / (2.0 * std::numbers::pi)));
      if (w != 0) set.vortices.push_back({i, j, w});
    }
  return set;
}

VortexSet merge_touching(const VortexSet& set, int L) {
  const std::size_t n = set.vortices.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto near = [L](int a, int b) {
    const int d = std::abs(a - b);
    return std::min(d, L - d) <= 1;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Vortex& u = set.vortices[a];
      const Vortex& v = set.vortices[b];
      if ((u.w > 0) == (v.w > 0) && near(u.i, v.i) && near(u.j, v.j)) parent[root(b)] = root(a);
    }
  VortexSet out;
  out.t = set.t;
  std::vector<int> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = root(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.vortices.size());
      out.vortices.push_back(set.vortices[i]);
    } else {
      out.vortices[static_cast<std::size_t>(slot[r])].w += set.vortices[i].w;
    }
  }
  return out;
}

VortexCountRow vortex_count_row(const VortexSet& set, int L) {
  return {set.t, set.count(), set.abs_circulation(), merge_touching(set, L).count()};
}

std::vector<VortexCountRow> vortex_count_series(std::span<const VortexSet> snapshots, int L) {
  std::vector<VortexCountRow> rows;
  rows.reserve(snapshots.size());
  for (const VortexSet& s : snapshots) rows.push_back(vortex_count_row(s, L));
  return rows;
}

}  // namespace gpqla
