#include "gpqla/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "gpqla/errors.hpp"

namespace gpqla {

namespace fs = std::filesystem;

namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

void encode(const ComplexField& f, std::vector<char>& out) {
  for (const Complex& z : f.values()) {
    for (double part : {z.real(), z.imag()}) {
      const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(part));
      char bytes[8];
      std::memcpy(bytes, &bits, 8);
      out.insert(out.end(), bytes, bytes + 8);
    }
  }
}

void decode(const char* in, ComplexField& f) {
  for (Complex& z : f.values()) {
    double parts[2];
    for (double& p : parts) {
      std::uint64_t bits;
      std::memcpy(&bits, in, 8);
      in += 8;
      p = std::bit_cast<double>(to_little(bits));
    }
    z = Complex(parts[0], parts[1]);
  }
}

// Write to a temporary name first so a crash never leaves a half-written file
// under the final name.
void write_file(const fs::path& path, const char* data, std::size_t n) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os.write(data, static_cast<std::streamsize>(n));
    if (!os) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace

fs::path checkpoint_sidecar(const fs::path& stem) { return fs::path(stem.string() + ".json"); }
fs::path checkpoint_payload(const fs::path& stem) { return fs::path(stem.string() + ".bin"); }

void write_checkpoint(const fs::path& stem, const SpinorField& field, double g,
                      const nlohmann::json& config) {
  if (stem.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(stem.parent_path(), ec);
    if (ec) throw IoError("cannot create " + stem.parent_path().string() + ": " + ec.message());
  }
  std::vector<char> bytes;
  bytes.reserve(field.grid().sites() * 32);
  encode(field.q0(), bytes);
  encode(field.q1(), bytes);

  nlohmann::json meta = {{"format_version", kCheckpointFormatVersion},
                         {"L", field.grid().L()},
                         {"dx", field.grid().dx()},
                         {"g", g},
                         {"t", field.iteration()},
                         {"payload_bytes", bytes.size()},
                         {"config", config}};
  write_file(checkpoint_payload(stem), bytes.data(), bytes.size());
  const std::string text = meta.dump(2) + "\n";
  write_file(checkpoint_sidecar(stem), text.data(), text.size());
}

Checkpoint read_checkpoint(const fs::path& stem) {
  const fs::path side = checkpoint_sidecar(stem);
  const fs::path bin = checkpoint_payload(stem);

  nlohmann::json meta;
  {
    std::ifstream is(side);
    if (!is) throw IoError("cannot open checkpoint header " + side.string());
    try {
      meta = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("corrupt checkpoint header " + side.string() + ": " + e.what());
    }
  }

  int version = 0, L = 0;
  double dx = 0.0, g = 0.0;
  std::int64_t t = 0;
  try {
    version = meta.at("format_version").get<int>();
    L = meta.at("L").get<int>();
    dx = meta.at("dx").get<double>();
    g = meta.at("g").get<double>();
    t = meta.at("t").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("checkpoint header " + side.string() + " is missing fields: " + e.what());
  }
  if (version != kCheckpointFormatVersion)
    throw IoError("checkpoint " + side.string() + " has format_version " + std::to_string(version) +
                  ", expected " + std::to_string(kCheckpointFormatVersion));

  Grid grid;
  try {
    grid = Grid(L, dx);
  } catch (const ConfigError& e) {
    throw IoError("checkpoint header " + side.string() + " has invalid grid: " + e.what());
  }

  const std::size_t expected = grid.sites() * 32;
  std::ifstream is(bin, std::ios::binary | std::ios::ate);
  if (!is) throw IoError("cannot open checkpoint payload " + bin.string());
  const auto size = static_cast<std::size_t>(is.tellg());
  if (size != expected)
    throw IoError("checkpoint payload " + bin.string() + " has " + std::to_string(size) +
                  " bytes, expected " + std::to_string(expected) + " for L=" + std::to_string(L));
  std::vector<char> bytes(size);
  is.seekg(0);
  is.read(bytes.data(), static_cast<std::streamsize>(size));
  if (!is) throw IoError("short read on " + bin.string());

  SpinorField field(grid);
  decode(bytes.data(), field.q0());
  decode(bytes.data() + expected / 2, field.q1());
  field.set_iteration(t);
  return Checkpoint{std::move(field), g, meta.value("config", nlohmann::json::object())};
}

}  // namespace gpqla
