#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpqla/field.hpp"

namespace gpqla {

// Plaquette (i, j) has corners (i,j), (i+1,j), (i+1,j+1), (i,j+1), wrapped
// periodically. Positive w is counter-clockwise circulation.
struct Vortex {
  int i = 0;
  int j = 0;
  int w = 0;
  bool operator==(const Vortex&) const = default;
};

struct VortexSet {
  std::int64_t t = 0;
  std::vector<Vortex> vortices;  // ordered by (i, j)

  int count() const { return static_cast<int>(vortices.size()); }
  int total_circulation() const;
  int abs_circulation() const;
};

// Arg psi in (-pi, pi].
RealField phase_field(const WaveField& psi);

// Wraps an angle difference into (-pi, pi].
double wrap_phase(double d);

// Sum of the four wrapped phase differences around plaquette (i, j).
double plaquette_circulation(const RealField& theta, int i, int j);

VortexSet detect_vortices(const WaveField& psi, std::int64_t t = 0);

// Merges same-sign detections whose plaquettes touch (including diagonally and
// across the periodic seam) into one entry carrying the summed winding, placed
// at the group's first plaquette. A |n| >= 2 core spans adjacent plaquettes,
// since no single plaquette can hold more than one wrapped turn in general.
VortexSet merge_touching(const VortexSet& set, int L);

struct VortexCountRow {
  std::int64_t t = 0;
  int count = 0;
  int abs_circulation = 0;
  int cores = 0;  // count after merge_touching
};

VortexCountRow vortex_count_row(const VortexSet& set, int L);
std::vector<VortexCountRow> vortex_count_series(std::span<const VortexSet> snapshots, int L);

}  // namespace gpqla
