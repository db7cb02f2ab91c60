#include "gpqla/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "gpqla/errors.hpp"

namespace gpqla {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where + ": " +
                      j.at(key).dump());
  }
}

FitWindow window_from_json(const json& j) {
  if (j.is_string()) return parse_fit_window(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("fit window must be a string or object");
  reject_unknown(j, {"k_min", "k_max", "which"}, "fit window");
  FitWindow w;
  read(j, "k_min", w.k_min, "fit window");
  read(j, "k_max", w.k_max, "fit window");
  if (j.contains("which")) w.which = parse_spectrum_kind(j.at("which").get<std::string>());
  return w;
}

void init_from_json(const json& j, InitSpec& s) {
  if (j.is_string()) {
    s.type = parse_init_type(j.get<std::string>());
    return;
  }
  if (!j.is_object()) throw ConfigError("init must be a type name or an object");
  const std::string where = "init";
  reject_unknown(j,
                 {"type", "h", "a", "w_g", "vortices", "spacing", "winding", "center", "m",
                  "amplitude"},
                 where);
  if (j.contains("type")) s.type = parse_init_type(j.at("type").get<std::string>());
  read(j, "h", s.cloud.h, where);
  read(j, "a", s.cloud.a, where);
  read(j, "w_g", s.cloud.w_g, where);
  read(j, "winding", s.winding, where);
  read(j, "m", s.m, where);
  read(j, "amplitude", s.amplitude, where);
  if (j.contains("spacing")) {
    double v = 0.0;
    read(j, "spacing", v, where);
    s.spacing = v;
  }
  if (j.contains("center")) {
    const json& c = j.at("center");
    if (!c.is_array() || c.size() != 2) throw ConfigError("init.center must be [x, y]");
    s.center = Point2{c[0].get<double>(), c[1].get<double>()};
  }
  if (j.contains("vortices")) {
    s.vortices.clear();
    for (const json& v : j.at("vortices")) {
      reject_unknown(v, {"x", "y", "n"}, "init.vortices");
      VortexSpec spec;
      read(v, "x", spec.x, "init.vortices");
      read(v, "y", spec.y, "init.vortices");
      read(v, "n", spec.winding, "init.vortices");
      s.vortices.push_back(spec);
    }
  }
}

}  // namespace

std::string to_string(InitType t) {
  switch (t) {
    case InitType::gaussian_vortices: return "gaussian_vortices";
    case InitType::random_phase: return "random_phase";
    case InitType::uniform: return "uniform";
  }
  return "?";
}

InitType parse_init_type(const std::string& s) {
  if (s == "gaussian_vortices") return InitType::gaussian_vortices;
  if (s == "random_phase") return InitType::random_phase;
  if (s == "uniform") return InitType::uniform;
  throw ConfigError("unknown init type '" + s + "' (gaussian_vortices, random_phase, uniform)");
}

FitWindow parse_fit_window(const std::string& s) {
  FitWindow w;
  const auto a = s.find(':');
  if (a == std::string::npos) throw ConfigError("fit window must look like kmin:kmax, got '" + s + "'");
  const auto b = s.find(':', a + 1);
  try {
    std::size_t n = 0;
    const std::string lo = s.substr(0, a);
    const std::string hi = s.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1);
    w.k_min = std::stod(lo, &n);
    if (n != lo.size()) throw std::invalid_argument(lo);
    w.k_max = std::stod(hi, &n);
    if (n != hi.size()) throw std::invalid_argument(hi);
  } catch (const std::logic_error&) {
    throw ConfigError("fit window must look like kmin:kmax, got '" + s + "'");
  }
  if (b != std::string::npos) w.which = parse_spectrum_kind(s.substr(b + 1));
  return w;
}

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const std::string where = "config";
  reject_unknown(j,
                 {"grid", "dx", "g", "allow_negative_g", "steps", "sample_every", "spectra_every",
                  "dump_every", "checkpoint_every", "seed", "out", "recurrence_kappa",
                  "fit_window", "fit_windows", "init"},
                 where);
  read(j, "grid", c.grid, where);
  read(j, "dx", c.dx, where);
  read(j, "g", c.g, where);
  read(j, "allow_negative_g", c.allow_negative_g, where);
  read(j, "steps", c.steps, where);
  read(j, "sample_every", c.sample_every, where);
  read(j, "spectra_every", c.spectra_every, where);
  read(j, "dump_every", c.dump_every, where);
  read(j, "checkpoint_every", c.checkpoint_every, where);
  read(j, "seed", c.seed, where);
  read(j, "out", c.out, where);
  read(j, "recurrence_kappa", c.recurrence_kappa, where);
  if (j.contains("fit_window")) c.fit_windows = {window_from_json(j.at("fit_window"))};
  if (j.contains("fit_windows")) {
    c.fit_windows.clear();
    for (const json& w : j.at("fit_windows")) c.fit_windows.push_back(window_from_json(w));
  }
  if (j.contains("init")) init_from_json(j.at("init"), c.init);
  return c;
}

json config_to_json(const RunConfig& c) {
  json windows = json::array();
  for (const FitWindow& w : c.fit_windows)
    windows.push_back({{"k_min", w.k_min}, {"k_max", w.k_max}, {"which", to_string(w.which)}});
  json init = {{"type", to_string(c.init.type)}};
  switch (c.init.type) {
    case InitType::gaussian_vortices: {
      init["h"] = c.init.cloud.h;
      init["a"] = c.init.cloud.a;
      init["w_g"] = c.init.cloud.w_g;
      json vs = json::array();
      for (const VortexSpec& v : c.init.vortices) vs.push_back({{"x", v.x}, {"y", v.y}, {"n", v.winding}});
      if (!vs.empty()) init["vortices"] = vs;
      if (c.init.spacing) init["spacing"] = *c.init.spacing;
      init["winding"] = c.init.winding;
      if (c.init.center) init["center"] = {c.init.center->x, c.init.center->y};
      break;
    }
    case InitType::random_phase:
      init["m"] = c.init.m;
      init["amplitude"] = c.init.amplitude;
      break;
    case InitType::uniform:
      init["amplitude"] = c.init.amplitude;
      break;
  }
  return {{"grid", c.grid},
          {"dx", c.dx},
          {"g", c.g},
          {"allow_negative_g", c.allow_negative_g},
          {"steps", c.steps},
          {"sample_every", c.sample_every},
          {"spectra_every", c.spectra_every},
          {"dump_every", c.dump_every},
          {"checkpoint_every", c.checkpoint_every},
          {"seed", c.seed},
          {"out", c.out},
          {"recurrence_kappa", c.recurrence_kappa},
          {"fit_windows", windows},
          {"init", init}};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(is, nullptr, true, true);
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void validate(const RunConfig& c) {
  Grid(c.grid, c.dx);
  if (!std::isfinite(c.g)) throw ConfigError("g must be finite");
  if (c.g < 0.0 && !c.allow_negative_g)
    throw ConfigError("g < 0 (attractive) is rejected unless allow_negative_g is set");
  if (c.steps < 0) throw ConfigError("steps must be >= 0");
  for (auto [name, v] : {std::pair{"sample_every", c.sample_every},
                         std::pair{"spectra_every", c.spectra_every},
                         std::pair{"dump_every", c.dump_every},
                         std::pair{"checkpoint_every", c.checkpoint_every}})
    if (v < 0) throw ConfigError(std::string(name) + " must be >= 0");
  if (!(c.recurrence_kappa > 0.0)) throw ConfigError("recurrence_kappa must be > 0");
  if (c.out.empty()) throw ConfigError("out must not be empty");
  for (const FitWindow& w : c.fit_windows)
    if (!(w.k_min < w.k_max)) throw ConfigError("fit window requires k_min < k_max");
  if (c.init.type == InitType::random_phase && (c.init.m < 1 || c.grid % c.init.m != 0))
    throw ConfigError("init.m=" + std::to_string(c.init.m) + " must divide grid=" +
                      std::to_string(c.grid));
  if (!(c.init.amplitude > 0.0)) throw ConfigError("init.amplitude must be > 0");
}

WaveField initial_state(const RunConfig& c) {
  validate(c);
  const Grid grid = c.make_grid();
  switch (c.init.type) {
    case InitType::gaussian_vortices: {
      std::vector<VortexSpec> vs = c.init.vortices;
      if (vs.empty())
        vs = square_vortex_array(grid, c.init.spacing.value_or(grid.L() / 4.0), c.init.winding,
                                 c.init.center);
      return gaussian_vortex_state(grid, c.init.cloud, vs, c.init.center);
    }
    case InitType::random_phase:
      return random_phase_state(grid, RandomPhaseParams{c.init.m, c.seed, c.init.amplitude});
    case InitType::uniform:
      return uniform_state(grid, Complex(c.init.amplitude, 0.0));
  }
  throw ConfigError("unhandled init type");
}

}  // namespace gpqla
