#include "gpqla/csv.hpp"

#include <cstdio>
#include <sstream>

#include "gpqla/errors.hpp"

namespace gpqla {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const fs::path& path, const std::string& header, bool append) : path_(path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  const bool fresh = !append || !fs::exists(path) || fs::file_size(path) == 0;
  os_.open(path, append ? std::ios::app : std::ios::trunc);
  if (!os_) throw IoError("cannot open " + path.string() + " for writing");
  if (fresh) os_ << header << '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os_ << (i ? "," : "") << fields[i];
  os_ << '\n';
  if (!os_) throw IoError("write failed: " + path_.string());
}

void CsvWriter::flush() {
  os_.flush();
  if (!os_) throw IoError("write failed: " + path_.string());
}

std::vector<std::string> timeseries_fields(const EnergyRecord& r) {
  return {std::to_string(r.t), format_double(r.E_T), format_double(r.E_K), format_double(r.E_I),
          format_double(r.E_Q), format_double(r.E_C), format_double(r.E_IC), format_double(r.Z)};
}

std::vector<std::string> vortex_series_fields(const VortexCountRow& r) {
  return {std::to_string(r.t), std::to_string(r.count), std::to_string(r.abs_circulation),
          std::to_string(r.cores)};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path,
                                               const std::string& expected_header) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != expected_header)
    throw IoError(path.string() + ": expected header '" + expected_header + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    rows.push_back(std::move(fields));
  }
  return rows;
}

namespace {

double to_double(const std::string& s, const fs::path& path) {
  try {
    std::size_t n = 0;
    const double v = std::stod(s, &n);
    if (n != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError(path.string() + ": malformed number '" + s + "'");
  }
}

}  // namespace

std::vector<EnergyRecord> read_timeseries(const fs::path& path) {
  std::vector<EnergyRecord> out;
  for (const auto& f : read_csv(path, kTimeseriesHeader)) {
    if (f.size() != 8) throw IoError(path.string() + ": expected 8 columns");
    EnergyRecord r;
    r.t = static_cast<std::int64_t>(to_double(f[0], path));
    r.E_T = to_double(f[1], path);
    r.E_K = to_double(f[2], path);
    r.E_I = to_double(f[3], path);
    r.E_Q = to_double(f[4], path);
    r.E_C = to_double(f[5], path);
    r.E_IC = to_double(f[6], path);
    r.Z = to_double(f[7], path);
    out.push_back(r);
  }
  return out;
}

void write_spectrum(const fs::path& path, const SpectrumRecord& s) {
  CsvWriter w(path, kSpectrumHeader);
  for (std::size_t j = 0; j < s.k.size(); ++j)
    w.row({format_double(s.k[j]), format_double(s.eps_ic[j]), format_double(s.eps_c[j])});
  w.flush();
}

SpectrumRecord read_spectrum(const fs::path& path, std::int64_t t) {
  SpectrumRecord s;
  s.t = t;
  for (const auto& f : read_csv(path, kSpectrumHeader)) {
    if (f.size() != 3) throw IoError(path.string() + ": expected 3 columns");
    s.k.push_back(to_double(f[0], path));
    s.eps_ic.push_back(to_double(f[1], path));
    s.eps_c.push_back(to_double(f[2], path));
  }
  return s;
}

void write_vortices(const fs::path& path, const VortexSet& v) {
  CsvWriter w(path, kVortexHeader);
  for (const Vortex& x : v.vortices)
    w.row({std::to_string(x.i), std::to_string(x.j), std::to_string(x.w)});
  w.flush();
}

}  // namespace gpqla
