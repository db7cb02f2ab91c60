#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpqla/field.hpp"
#include "gpqla/init.hpp"
#include "gpqla/spectra.hpp"

namespace gpqla {

enum class InitType { gaussian_vortices, random_phase, uniform };

std::string to_string(InitType t);
InitType parse_init_type(const std::string& s);

struct InitSpec {
  InitType type = InitType::gaussian_vortices;

  // gaussian_vortices: explicit list, or a square of side `spacing`
  // (default L/4) with winding +-n when the list is empty.
  GaussianCloudParams cloud;
  std::vector<VortexSpec> vortices;
  std::optional<double> spacing;
  int winding = 1;
  std::optional<Point2> center;

  // random_phase (seed comes from RunConfig::seed)
  int m = 8;
  // random_phase and uniform
  double amplitude = 1.0;
};

struct FitWindow {
  double k_min = 50.0;
  double k_max = 100.0;
  SpectrumKind which = SpectrumKind::ic;
};

// "kmin:kmax" or "kmin:kmax:ic|c".
FitWindow parse_fit_window(const std::string& s);

// Every field is also a command-line flag. Cadences of 0 disable a channel.
struct RunConfig {
  int grid = 64;
  double dx = 0.1;
  double g = 1.0;
  bool allow_negative_g = false;
  std::int64_t steps = 1000;
  std::int64_t sample_every = 10;
  std::int64_t spectra_every = 100;
  std::int64_t dump_every = 0;
  std::int64_t checkpoint_every = 0;
  std::uint64_t seed = 1;
  std::string out = "out";
  double recurrence_kappa = 3.0;
  std::vector<FitWindow> fit_windows = {FitWindow{}};
  InitSpec init;

  Grid make_grid() const { return Grid(grid, dx); }
};

// Throws ConfigError on unknown keys, wrong types or invalid values.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::json config_to_json(const RunConfig& c);
RunConfig load_config(const std::filesystem::path& path);
void validate(const RunConfig& c);

// Builds the initial wave function described by the config.
WaveField initial_state(const RunConfig& c);

}  // namespace gpqla
