#pragma once

#include <filesystem>

#include <json.hpp>

#include "gpqla/lattice.hpp"

namespace gpqla {

inline constexpr int kCheckpointFormatVersion = 1;

// A checkpoint is a pair of files sharing a stem: <stem>.json holds
// {format_version, L, dx, g, t, config} and <stem>.bin holds q0 then q1,
// row-major, as little-endian (re, im) doubles.
struct Checkpoint {
  SpinorField field;
  double g = 0.0;
  nlohmann::json config;
};

std::filesystem::path checkpoint_sidecar(const std::filesystem::path& stem);
std::filesystem::path checkpoint_payload(const std::filesystem::path& stem);

void write_checkpoint(const std::filesystem::path& stem, const SpinorField& field, double g,
                      const nlohmann::json& config = nlohmann::json::object());

// Throws IoError on missing files, version or shape mismatch, or truncated data.
Checkpoint read_checkpoint(const std::filesystem::path& stem);

}  // namespace gpqla
