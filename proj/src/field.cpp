#include "gpqla/field.hpp"

#include <cmath>
#include <string>

#include "gpqla/errors.hpp"

namespace gpqla {

Grid::Grid(int L, double dx) : L_(L), dx_(dx) {
  if (L < 4) throw ConfigError("grid: L must be >= 4, got " + std::to_string(L));
  if (!(dx > 0.0) || !std::isfinite(dx)) throw ConfigError("grid: dx must be positive and finite");
}

WaveField::WaveField(const Grid& g, ComplexField values) : grid(g), psi(std::move(values)) {
  if (psi.L() != g.L()) throw ConfigError("wave field size does not match grid");
}

}  // namespace gpqla
