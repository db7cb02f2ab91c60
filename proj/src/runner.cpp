#include "gpqla/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "gpqla/checkpoint.hpp"
#include "gpqla/csv.hpp"
#include "gpqla/diagnostics.hpp"
#include "gpqla/errors.hpp"
#include "gpqla/recurrence.hpp"
#include "gpqla/spectra.hpp"
#include "gpqla/vortex.hpp"

namespace gpqla {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path snapshot_name(const std::string& prefix, std::int64_t t, const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08lld", static_cast<long long>(t));
  return prefix + "_" + buf + ext;
}

namespace {

bool due(std::int64_t t, std::int64_t every) { return every > 0 && t % every == 0; }

double rel(double a, double b) { return b != 0.0 ? std::abs(a - b) / std::abs(b) : std::abs(a - b); }

void make_dirs(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create " + p.string() + ": " + ec.message());
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw IoError("write failed: " + path.string());
}

// Keeps the header and rows whose first column is <= t.
void truncate_rows_after(const fs::path& path, std::int64_t t) {
  if (!fs::exists(path)) return;
  std::ifstream is(path);
  std::vector<std::string> keep;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (header || line.empty()) {
      if (header) keep.push_back(line);
      header = false;
      continue;
    }
    const long long row_t = std::stoll(line.substr(0, line.find(',')));
    if (row_t <= t) keep.push_back(line);
  }
  is.close();
  std::ofstream os(path, std::ios::trunc);
  for (const std::string& l : keep) os << l << '\n';
  if (!os) throw IoError("cannot rewrite " + path.string());
}

struct FitStats {
  FitWindow window;
  std::vector<double> alpha;
  std::vector<double> std_error;
  int failures = 0;

  json summary() const {
    json j = {{"k_min", window.k_min},
              {"k_max", window.k_max},
              {"which", to_string(window.which)},
              {"snapshots", alpha.size()},
              {"failures", failures}};
    if (!alpha.empty()) {
      double m = 0.0, se = 0.0;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        m += alpha[i];
        se += std_error[i];
      }
      m /= static_cast<double>(alpha.size());
      se /= static_cast<double>(alpha.size());
      double var = 0.0;
      for (double a : alpha) var += (a - m) * (a - m);
      j["mean_alpha"] = m;
      j["std_alpha"] = alpha.size() > 1 ? std::sqrt(var / static_cast<double>(alpha.size() - 1)) : 0.0;
      j["mean_stderr"] = se;
    }
    return j;
  }
};

bool same_window(const FitWindow& a, double k_min, double k_max, SpectrumKind which) {
  return a.k_min == k_min && a.k_max == k_max && a.which == which;
}

json recurrence_json(const std::vector<EnergyRecord>& records, double kappa) {
  RecurrenceOptions opt;
  opt.kappa = kappa;
  if (records.size() < opt.min_samples)
    return {{"status", "insufficient_samples"}, {"samples", records.size()}, {"kappa", kappa}};
  const RecurrenceReport r = detect_recurrence(records, opt);
  json j = {{"status", r.empty() ? "empty" : "detected"},
            {"kappa", r.kappa},
            {"ei_peaks", r.ei_peaks},
            {"eic_dips", r.eic_dips},
            {"z_dips", r.z_dips},
            {"t_p_half", nullptr},
            {"t_p", nullptr},
            {"estimate_source", r.estimate_source}};
  if (r.t_p_half) j["t_p_half"] = *r.t_p_half;
  if (r.t_p) j["t_p"] = *r.t_p;
  return j;
}

class Session {
 public:
  Session(RunConfig cfg, SpinorField field, json tracking, std::ostream* log)
      : cfg_(std::move(cfg)), field_(std::move(field)), last_good_(field_), track_(std::move(tracking)),
        log_(log), out_(cfg_.out) {
    for (const FitWindow& w : cfg_.fit_windows) fits_.push_back({w, {}, {}, 0});
  }

  json execute(bool resuming) {
    const auto wall0 = std::chrono::steady_clock::now();
    if (!field_.all_finite())
      throw NumericalError("field at t=" + std::to_string(field_.iteration()) + " is not finite");
    make_dirs(out_);
    make_dirs(out_ / "spectra");
    make_dirs(out_ / "vortices");
    if (cfg_.dump_every > 0) make_dirs(out_ / "dumps");
    write_json(out_ / "config.json", config_to_json(cfg_));

    const std::int64_t t0 = field_.iteration();
    if (resuming) restore_history(t0);

    CsvWriter ts(out_ / "timeseries.csv", kTimeseriesHeader, resuming);
    CsvWriter vs(out_ / "vortex_series.csv", kVortexSeriesHeader, resuming);
    CsvWriter fits(out_ / "fits.csv", kFitsHeader, resuming);
    ts_ = &ts;
    vs_ = &vs;
    fits_csv_ = &fits;

    if (!resuming) {
      track_["density0"] = field_.density_sum();
      track_["norm0"] = field_.norm();
      track_["density_drift"] = 0.0;
      track_["norm_drift"] = 0.0;
      track_["structure_defect"] = field_.structure_defect();
      outputs(field_.iteration());
    }

    Stepper stepper(field_.grid(), CouplingParams{cfg_.g});
    while (field_.iteration() < cfg_.steps) {
      try {
        stepper.step(field_);
      } catch (const NumericalError& e) {
        fail(e.what());
      }
      outputs(field_.iteration());
    }
    if (!field_.all_finite()) fail("non-finite field at t=" + std::to_string(field_.iteration()));
    track(field_);

    ts.flush();
    vs.flush();
    fits.flush();
    write_checkpoint(out_ / "checkpoint", field_, cfg_.g, echo());

    json s = summary();
    s["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    write_json(out_ / "summary.json", s);
    return s;
  }

 private:
  json echo() const { return {{"run", config_to_json(cfg_)}, {"tracking", track_}}; }

  [[noreturn]] void fail(const std::string& what) {
    if (ts_) ts_->flush();
    write_checkpoint(out_ / "last_good", last_good_, cfg_.g, echo());
    throw NumericalError(what + "; last good state (t=" + std::to_string(last_good_.iteration()) +
                         ") saved to " + (out_ / "last_good").string());
  }

  void track(const SpinorField& f) {
    const double d0 = track_["density0"], n0 = track_["norm0"];
    track_["density_drift"] =
        std::max(track_["density_drift"].get<double>(), rel(f.density_sum(), d0));
    track_["norm_drift"] = std::max(track_["norm_drift"].get<double>(), rel(f.norm(), n0));
    track_["structure_defect"] =
        std::max(track_["structure_defect"].get<double>(), f.structure_defect());
  }

  void restore_history(std::int64_t t0) {
    for (const char* name : {"timeseries.csv", "vortex_series.csv", "fits.csv"})
      truncate_rows_after(out_ / name, t0);
    if (fs::exists(out_ / "timeseries.csv")) records_ = read_timeseries(out_ / "timeseries.csv");
    for (EnergyRecord& r : records_) {
      if (r.E_K > 0.0) {
        ratio_sum_ += r.E_I / r.E_K;
        ++ratio_n_;
      }
      r.gamma_running = ratio_n_ ? ratio_sum_ / ratio_n_ : 0.0;
    }
    if (fs::exists(out_ / "fits.csv")) {
      for (const auto& row : read_csv(out_ / "fits.csv", kFitsHeader)) {
        if (row.size() != 6) continue;
        const double lo = std::stod(row[1]), hi = std::stod(row[2]);
        const SpectrumKind which = parse_spectrum_kind(row[3]);
        for (FitStats& f : fits_)
          if (same_window(f.window, lo, hi, which)) {
            f.alpha.push_back(std::stod(row[4]));
            f.std_error.push_back(std::stod(row[5]));
          }
      }
    }
  }

  void outputs(std::int64_t t) {
    const bool sample = due(t, cfg_.sample_every);
    const bool spectra = due(t, cfg_.spectra_every);
    const bool dump = due(t, cfg_.dump_every);
    const bool ckpt = due(t, cfg_.checkpoint_every);
    if (!(sample || spectra || dump || ckpt)) return;
    if (!field_.all_finite()) fail("non-finite field at t=" + std::to_string(t));
    track(field_);
    last_good_ = field_;

    if (sample || spectra) {
      const WaveField wave = field_.wave();
      const HydroFields hydro = hydro_fields(wave);
      const VortexSet vortices = detect_vortices(wave, t);
      last_vortices_ = vortices;
      if (sample) {
        EnergyRecord r = energies(hydro, cfg_.g, t);
        if (r.E_K > 0.0) {
          ratio_sum_ += r.E_I / r.E_K;
          ++ratio_n_;
        }
        r.gamma_running = ratio_n_ ? ratio_sum_ / ratio_n_ : 0.0;
        ts_->row(timeseries_fields(r));
        vs_->row(vortex_series_fields(vortex_count_row(vortices, cfg_.grid)));
        records_.push_back(r);
        if (log_ && due(t, cfg_.sample_every * 100))
          *log_ << "t=" << t << " E_T=" << format_double(r.E_T)
                << " vortices=" << vortices.count() << '\n';
      }
      if (spectra) {
        const SpectrumRecord spec = compute_spectrum(hydro.q, t);
        write_spectrum(out_ / "spectra" / snapshot_name("spectrum", t, ".csv"), spec);
        write_vortices(out_ / "vortices" / snapshot_name("vortices", t, ".csv"), vortices);
        for (FitStats& f : fits_) {
          try {
            const PowerLawFit p = fit_powerlaw(spec, f.window.which, f.window.k_min, f.window.k_max);
            f.alpha.push_back(p.alpha);
            f.std_error.push_back(p.std_error);
            fits_csv_->row({std::to_string(t), format_double(p.k_min), format_double(p.k_max),
                            to_string(p.which), format_double(p.alpha), format_double(p.std_error)});
          } catch (const ConfigError&) {
            ++f.failures;
          }
        }
      }
    }
    if (dump) write_checkpoint(out_ / "dumps" / snapshot_name("dump", t, ""), field_, cfg_.g, echo());
    if (ckpt) {
      ts_->flush();
      vs_->flush();
      fits_csv_->flush();
      write_checkpoint(out_ / "checkpoint", field_, cfg_.g, echo());
    }
  }

  json summary() const {
    json s;
    s["grid"] = cfg_.grid;
    s["dx"] = cfg_.dx;
    s["dt"] = field_.grid().dt();
    s["g"] = cfg_.g;
    s["steps"] = cfg_.steps;
    s["t_final"] = field_.iteration();
    s["samples"] = records_.size();
    s["invariants"] = {{"density_rel_drift_max", track_["density_drift"]},
                       {"norm_rel_drift_max", track_["norm_drift"]},
                       {"structure_defect_max", track_["structure_defect"]}};
    s["gamma"] = nullptr;
    if (!records_.empty()) {
      double drift = 0.0;
      for (const EnergyRecord& r : records_) drift = std::max(drift, rel(r.E_T, records_.front().E_T));
      s["invariants"]["energy_rel_drift_max"] = drift;
      try {
        s["gamma"] = gamma_ratio(records_);
      } catch (const NumericalError& e) {
        s["gamma_error"] = e.what();
      }
      const EnergyRecord& f = records_.back();
      s["final_energies"] = {{"t", f.t},     {"E_T", f.E_T},   {"E_K", f.E_K}, {"E_I", f.E_I},
                             {"E_Q", f.E_Q}, {"E_C", f.E_C},   {"E_IC", f.E_IC}, {"Z", f.Z}};
    }
    s["recurrence"] = recurrence_json(records_, cfg_.recurrence_kappa);
    json fits = json::array();
    for (const FitStats& f : fits_) fits.push_back(f.summary());
    s["fits"] = fits;
    if (last_vortices_)
      s["vortices"] = {{"t", last_vortices_->t},
                       {"count", last_vortices_->count()},
                       {"abs_circulation", last_vortices_->abs_circulation()},
                       {"cores", merge_touching(*last_vortices_, cfg_.grid).count()},
                       {"total_circulation", last_vortices_->total_circulation()}};
    return s;
  }

  RunConfig cfg_;
  SpinorField field_;
  SpinorField last_good_;
  json track_;
  std::ostream* log_;
  fs::path out_;
  std::vector<EnergyRecord> records_;
  std::vector<FitStats> fits_;
  std::optional<VortexSet> last_vortices_;
  double ratio_sum_ = 0.0;
  long ratio_n_ = 0;
  CsvWriter* ts_ = nullptr;
  CsvWriter* vs_ = nullptr;
  CsvWriter* fits_csv_ = nullptr;
};

// Snapshot files named <prefix>_<t><ext> in dir, sorted by t.
std::vector<std::pair<std::int64_t, fs::path>> list_snapshots(const fs::path& dir,
                                                              const std::string& prefix,
                                                              const std::string& ext) {
  std::vector<std::pair<std::int64_t, fs::path>> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.size() <= prefix.size() + 1 + ext.size() || name.rfind(prefix + "_", 0) != 0 ||
        name.substr(name.size() - ext.size()) != ext)
      continue;
    const std::string digits =
        name.substr(prefix.size() + 1, name.size() - prefix.size() - 1 - ext.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) continue;
    out.emplace_back(std::stoll(digits), e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

json run(const RunConfig& config, std::ostream* log) {
  validate(config);
  SpinorField field = SpinorField::from_wave(initial_state(config));
  Session s(config, std::move(field), json::object(), log);
  return s.execute(false);
}

json resume(const fs::path& stem, std::optional<std::int64_t> steps, std::optional<std::string> out,
            std::ostream* log) {
  Checkpoint ck = read_checkpoint(stem);
  if (!ck.config.contains("run") || !ck.config.contains("tracking"))
    throw IoError("checkpoint " + stem.string() + " carries no run configuration");
  RunConfig cfg = config_from_json(ck.config.at("run"));
  if (steps) cfg.steps = *steps;
  if (out) cfg.out = *out;
  validate(cfg);
  if (cfg.grid != ck.field.grid().L() || cfg.dx != ck.field.grid().dx() || cfg.g != ck.g)
    throw IoError("checkpoint " + stem.string() + " does not match its configuration echo");
  if (cfg.steps < ck.field.iteration())
    throw ConfigError("steps=" + std::to_string(cfg.steps) + " is before the checkpoint time t=" +
                      std::to_string(ck.field.iteration()));
  Session s(cfg, std::move(ck.field), ck.config.at("tracking"), log);
  return s.execute(true);
}

json analyze(const fs::path& dir, const std::vector<FitWindow>& windows, std::ostream* log) {
  const auto dumps = list_snapshots(dir / "dumps", "dump", ".json");
  if (dumps.empty()) throw IoError("no dumps found under " + (dir / "dumps").string());
  const fs::path out = dir / "analysis";
  make_dirs(out / "spectra");
  make_dirs(out / "vortices");
  CsvWriter ts(out / "timeseries.csv", kTimeseriesHeader);
  CsvWriter vs(out / "vortex_series.csv", kVortexSeriesHeader);
  CsvWriter fits(out / "fits.csv", kFitsHeader);
  std::vector<FitStats> stats;
  for (const FitWindow& w : windows) stats.push_back({w, {}, {}, 0});
  std::vector<EnergyRecord> records;

  for (const auto& [t, path] : dumps) {
    fs::path stem = path;
    stem.replace_extension();
    const Checkpoint ck = read_checkpoint(stem);
    const WaveField wave = ck.field.wave();
    const HydroFields hydro = hydro_fields(wave);
    const EnergyRecord r = energies(hydro, ck.g, ck.field.iteration());
    const VortexSet v = detect_vortices(wave, r.t);
    const SpectrumRecord spec = compute_spectrum(hydro.q, r.t);
    ts.row(timeseries_fields(r));
    vs.row(vortex_series_fields(vortex_count_row(v, ck.field.grid().L())));
    write_spectrum(out / "spectra" / snapshot_name("spectrum", r.t, ".csv"), spec);
    write_vortices(out / "vortices" / snapshot_name("vortices", r.t, ".csv"), v);
    for (FitStats& f : stats) {
      try {
        const PowerLawFit p = fit_powerlaw(spec, f.window.which, f.window.k_min, f.window.k_max);
        f.alpha.push_back(p.alpha);
        f.std_error.push_back(p.std_error);
        fits.row({std::to_string(r.t), format_double(p.k_min), format_double(p.k_max),
                  to_string(p.which), format_double(p.alpha), format_double(p.std_error)});
      } catch (const ConfigError&) {
        ++f.failures;
      }
    }
    records.push_back(r);
    if (log) *log << "analyzed t=" << r.t << " vortices=" << v.count() << '\n';
  }
  ts.flush();
  vs.flush();
  fits.flush();

  json s = {{"snapshots", records.size()}, {"output", out.string()}};
  json fj = json::array();
  for (const FitStats& f : stats) fj.push_back(f.summary());
  s["fits"] = fj;
  write_json(out / "summary.json", s);
  return s;
}

json fit(const fs::path& dir, const std::vector<FitWindow>& windows,
         std::optional<fs::path> target, std::ostream* log) {
  const auto spectra = list_snapshots(dir / "spectra", "spectrum", ".csv");
  if (spectra.empty()) throw IoError("no spectra found under " + (dir / "spectra").string());
  CsvWriter out(target.value_or(dir / "fits_refit.csv"), kFitsHeader);
  std::vector<FitStats> stats;
  for (const FitWindow& w : windows) stats.push_back({w, {}, {}, 0});
  for (const auto& [t, path] : spectra) {
    const SpectrumRecord spec = read_spectrum(path, t);
    for (FitStats& f : stats) {
      try {
        const PowerLawFit p = fit_powerlaw(spec, f.window.which, f.window.k_min, f.window.k_max);
        f.alpha.push_back(p.alpha);
        f.std_error.push_back(p.std_error);
        out.row({std::to_string(t), format_double(p.k_min), format_double(p.k_max),
                 to_string(p.which), format_double(p.alpha), format_double(p.std_error)});
      } catch (const ConfigError& e) {
        ++f.failures;
        if (log) *log << "t=" << t << ": " << e.what() << '\n';
      }
    }
  }
  out.flush();
  json fj = json::array();
  for (const FitStats& f : stats) fj.push_back(f.summary());
  return {{"spectra", spectra.size()}, {"fits", fj}};
}

}  // namespace gpqla
