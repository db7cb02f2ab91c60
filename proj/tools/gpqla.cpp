// Command-line driver: run, resume, analyze, fit.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpqla/config.hpp"
#include "gpqla/errors.hpp"
#include "gpqla/runner.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<int> grid;
  std::optional<double> dx, g;
  std::optional<std::int64_t> steps, sample_every, spectra_every, dump_every, checkpoint_every;
  std::optional<std::string> init, out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> fit_windows;
  bool allow_negative_g = false;
  bool quiet = false;
};

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--grid", o.grid, "sites per dimension L");
  cmd->add_option("--dx", o.dx, "lattice spacing (dt = dx^2)");
  cmd->add_option("--g", o.g, "nonlinear coupling");
  cmd->add_option("--steps", o.steps, "total iterations");
  cmd->add_option("--init", o.init, "gaussian_vortices | random_phase | uniform");
  cmd->add_option("--seed", o.seed, "random-phase seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--sample-every", o.sample_every, "energy sampling cadence (0 disables)");
  cmd->add_option("--spectra-every", o.spectra_every, "spectra/vortex snapshot cadence");
  cmd->add_option("--dump-every", o.dump_every, "field dump cadence");
  cmd->add_option("--checkpoint-every", o.checkpoint_every, "checkpoint cadence");
  cmd->add_option("--fit-window", o.fit_windows, "kmin:kmax[:ic|c], repeatable");
  cmd->add_flag("--allow-negative-g", o.allow_negative_g, "permit attractive coupling");
  cmd->add_flag("-q,--quiet", o.quiet, "no progress output");
}

gpqla::RunConfig build_config(const Overrides& o) {
  gpqla::RunConfig c = o.config.empty() ? gpqla::RunConfig{} : gpqla::load_config(o.config);
  if (o.grid) c.grid = *o.grid;
  if (o.dx) c.dx = *o.dx;
  if (o.g) c.g = *o.g;
  if (o.steps) c.steps = *o.steps;
  if (o.init) c.init.type = gpqla::parse_init_type(*o.init);
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.out = *o.out;
  if (o.sample_every) c.sample_every = *o.sample_every;
  if (o.spectra_every) c.spectra_every = *o.spectra_every;
  if (o.dump_every) c.dump_every = *o.dump_every;
  if (o.checkpoint_every) c.checkpoint_every = *o.checkpoint_every;
  if (o.allow_negative_g) c.allow_negative_g = true;
  if (!o.fit_windows.empty()) {
    c.fit_windows.clear();
    for (const std::string& w : o.fit_windows) c.fit_windows.push_back(gpqla::parse_fit_window(w));
  }
  gpqla::validate(c);
  return c;
}

std::vector<gpqla::FitWindow> windows_or_default(const std::vector<std::string>& specs) {
  std::vector<gpqla::FitWindow> w;
  for (const std::string& s : specs) w.push_back(gpqla::parse_fit_window(s));
  if (w.empty()) w.push_back(gpqla::FitWindow{});
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum lattice simulator for the 2D Gross-Pitaevskii equation"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run_cmd = app.add_subcommand("run", "run a simulation from a config");
  add_run_flags(run_cmd, run_opts);

  std::string ckpt;
  std::optional<std::int64_t> resume_steps;
  std::optional<std::string> resume_out;
  bool resume_quiet = false;
  auto* resume_cmd = app.add_subcommand("resume", "continue from a checkpoint");
  resume_cmd->add_option("checkpoint", ckpt, "checkpoint stem (path without .json/.bin)")->required();
  resume_cmd->add_option("--steps", resume_steps, "new total iteration count");
  resume_cmd->add_option("--out", resume_out, "output directory");
  resume_cmd->add_flag("-q,--quiet", resume_quiet);

  std::string dir;
  std::vector<std::string> windows;
  auto* analyze_cmd = app.add_subcommand("analyze", "recompute diagnostics from dumps");
  analyze_cmd->add_option("--out", dir, "run output directory")->required();
  analyze_cmd->add_option("--fit-window", windows, "kmin:kmax[:ic|c], repeatable");

  std::string fit_target;
  auto* fit_cmd = app.add_subcommand("fit", "power-law fits over stored spectra");
  fit_cmd->add_option("--out", dir, "directory holding spectra/")->required();
  fit_cmd->add_option("--fit-window", windows, "kmin:kmax[:ic|c], repeatable");
  fit_cmd->add_option("--to", fit_target, "output CSV (default <out>/fits_refit.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    nlohmann::json summary;
    if (*run_cmd) {
      const gpqla::RunConfig c = build_config(run_opts);
      summary = gpqla::run(c, run_opts.quiet ? nullptr : &std::cerr);
    } else if (*resume_cmd) {
      summary = gpqla::resume(ckpt, resume_steps, resume_out, resume_quiet ? nullptr : &std::cerr);
    } else if (*analyze_cmd) {
      summary = gpqla::analyze(dir, windows_or_default(windows), &std::cerr);
    } else if (*fit_cmd) {
      std::optional<std::filesystem::path> target;
      if (!fit_target.empty()) target = fit_target;
      summary = gpqla::fit(dir, windows_or_default(windows), target, &std::cerr);
    }
    std::cout << summary.dump(2) << '\n';
    return 0;
  } catch (const gpqla::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const gpqla::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const gpqla::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  }
}
