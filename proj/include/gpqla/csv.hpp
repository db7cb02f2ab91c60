#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gpqla/diagnostics.hpp"
#include "gpqla/spectra.hpp"
#include "gpqla/vortex.hpp"

namespace gpqla {

// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

class CsvWriter {
 public:
  // Truncates unless append is set; the header is written only to empty files.
  CsvWriter(const std::filesystem::path& path, const std::string& header, bool append = false);

  void row(const std::vector<std::string>& fields);
  void flush();

 private:
  std::filesystem::path path_;
  std::ofstream os_;
};

inline constexpr const char* kTimeseriesHeader = "t,E_T,E_K,E_I,E_Q,E_C,E_IC,Z";
inline constexpr const char* kSpectrumHeader = "k,eps_ic,eps_c";
inline constexpr const char* kFitsHeader = "t,k_min,k_max,which,alpha,stderr";
inline constexpr const char* kVortexHeader = "i,j,w";
inline constexpr const char* kVortexSeriesHeader = "t,count,abs_circulation,cores";

std::vector<std::string> timeseries_fields(const EnergyRecord& r);
std::vector<std::string> vortex_series_fields(const VortexCountRow& r);

// Rows of a CSV file split on commas; the header line is checked and dropped.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               const std::string& expected_header);

std::vector<EnergyRecord> read_timeseries(const std::filesystem::path& path);

void write_spectrum(const std::filesystem::path& path, const SpectrumRecord& s);
SpectrumRecord read_spectrum(const std::filesystem::path& path, std::int64_t t);

void write_vortices(const std::filesystem::path& path, const VortexSet& v);

}  // namespace gpqla
