#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "gpqla/config.hpp"
#include "gpqla/lattice.hpp"

namespace gpqla {

// Output tree under RunConfig::out:
//   config.json, timeseries.csv, vortex_series.csv, fits.csv, summary.json
//   spectra/spectrum_<t>.csv, vortices/vortices_<t>.csv
//   dumps/dump_<t>.{json,bin}, checkpoint.{json,bin}
//   last_good.{json,bin} when the field breaks down mid-run
std::filesystem::path snapshot_name(const std::string& prefix, std::int64_t t,
                                    const std::string& ext);

// Runs from the configured initial state. Returns the summary also written to
// summary.json. Throws ConfigError, NumericalError or IoError.
nlohmann::json run(const RunConfig& config, std::ostream* log = nullptr);

// Continues from a checkpoint written by run(). `steps` replaces the total
// step count and `out` the output directory of the original config.
// Rows already written past the checkpoint time are dropped.
nlohmann::json resume(const std::filesystem::path& checkpoint_stem,
                      std::optional<std::int64_t> steps = std::nullopt,
                      std::optional<std::string> out = std::nullopt, std::ostream* log = nullptr);

// Recomputes energies, spectra and vortices for every dump under dir/dumps
// and writes them under dir/analysis.
nlohmann::json analyze(const std::filesystem::path& dir, const std::vector<FitWindow>& windows,
                       std::ostream* log = nullptr);

// Power-law fits over every dir/spectra/spectrum_<t>.csv, written to `target`
// (default dir/fits_refit.csv).
nlohmann::json fit(const std::filesystem::path& dir, const std::vector<FitWindow>& windows,
                   std::optional<std::filesystem::path> target = std::nullopt,
                   std::ostream* log = nullptr);

}  // namespace gpqla
