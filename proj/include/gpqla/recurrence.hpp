#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpqla/diagnostics.hpp"

namespace gpqla {

struct RecurrenceOptions {
  double kappa = 3.0;
  std::size_t min_samples = 100;
};

struct RecurrenceReport {
  double kappa = 3.0;
  std::vector<std::int64_t> ei_peaks;
  std::vector<std::int64_t> eic_dips;
  std::vector<std::int64_t> z_dips;
  std::optional<std::int64_t> t_p_half;
  std::optional<std::int64_t> t_p;
  std::string estimate_source;  // "E_I", "E_IC" or empty

  bool empty() const { return ei_peaks.empty() && eic_dips.empty() && z_dips.empty(); }
};

// Times of isolated excursions of `values` above median + kappa * spread,
// spread = max(IQR, 1e-6 |median|). Each maximal run of samples beyond the
// threshold yields one event at its extreme; a run touching the first sample
// is the initial transient and is skipped. Dips use the mirrored rule.
std::vector<std::int64_t> threshold_events(std::span<const std::int64_t> t,
                                           std::span<const double> values, double kappa, bool dips);

// E_I peaks and E_IC / Z dips. T_P/2 and T_P are the first and second E_I
// peaks, falling back to E_IC dips when E_I shows none.
// Throws ConfigError with fewer than min_samples records.
RecurrenceReport detect_recurrence(std::span<const EnergyRecord> series,
                                   const RecurrenceOptions& options = {});

}  // namespace gpqla
