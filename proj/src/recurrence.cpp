#include "gpqla/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpqla/errors.hpp"

namespace gpqla {

namespace {

// Linear-interpolated quantile of sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<std::int64_t> threshold_events(std::span<const std::int64_t> t,
                                           std::span<const double> values, double kappa,
                                           bool dips) {
  if (t.size() != values.size()) throw ConfigError("threshold_events: size mismatch");
  std::vector<std::int64_t> events;
  if (values.empty()) return events;

  std::vector<double> v(values.begin(), values.end());
  if (dips)
    for (double& x : v) x = -x;
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  const double median = quantile(sorted, 0.5);
  const double spread =
      std::max(quantile(sorted, 0.75) - quantile(sorted, 0.25), 1e-6 * std::abs(median));
  const double threshold = median + kappa * spread;

  std::size_t i = 0;
  while (i < v.size()) {
    if (!(v[i] > threshold)) {
      ++i;
      continue;
    }
    std::size_t end = i, best = i;
    while (end < v.size() && v[end] > threshold) {
      if (v[end] > v[best]) best = end;
      ++end;
    }
    if (i > 0) events.push_back(t[best]);
    i = end;
  }
  return events;
}

RecurrenceReport detect_recurrence(std::span<const EnergyRecord> series,
                                   const RecurrenceOptions& options) {
  if (series.size() < options.min_samples)
    throw ConfigError("detect_recurrence: need at least " + std::to_string(options.min_samples) +
                      " samples, got " + std::to_string(series.size()));
  std::vector<std::int64_t> t;
  std::vector<double> ei, eic, z;
  for (const EnergyRecord& r : series) {
    t.push_back(r.t);
    ei.push_back(r.E_I);
    eic.push_back(r.E_IC);
    z.push_back(r.Z);
  }
  RecurrenceReport rep;
  rep.kappa = options.kappa;
  rep.ei_peaks = threshold_events(t, ei, options.kappa, false);
  rep.eic_dips = threshold_events(t, eic, options.kappa, true);
  rep.z_dips = threshold_events(t, z, options.kappa, true);

  const std::vector<std::int64_t>* source = nullptr;
  if (!rep.ei_peaks.empty()) {
    source = &rep.ei_peaks;
    rep.estimate_source = "E_I";
  } else if (!rep.eic_dips.empty()) {
    source = &rep.eic_dips;
    rep.estimate_source = "E_IC";
  }
  if (source) {
    rep.t_p_half = (*source)[0];
    if (source->size() > 1) rep.t_p = (*source)[1];
  }
  return rep;
}

}  // namespace gpqla
