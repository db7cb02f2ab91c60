#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gpqla {

using Complex = std::complex<double>;

// Periodic square lattice. Site coordinates run over [0, L) in each axis;
// physical positions are site * dx. Time advances by dt = dx^2 per step.
class Grid {
 public:
  Grid() = default;
  Grid(int L, double dx);

  int L() const { return L_; }
  double dx() const { return dx_; }
  double dt() const { return dx_ * dx_; }
  std::size_t sites() const { return static_cast<std::size_t>(L_) * static_cast<std::size_t>(L_); }

  // Side length of the periodic box in physical units.
  double extent() const { return L_ * dx_; }

  bool operator==(const Grid&) const = default;

 private:
  int L_ = 4;
  double dx_ = 1.0;
};

// Row-major L x L array; x is the fast index.
template <class T>
class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(int L, T value = T{})
      : L_(L), data_(static_cast<std::size_t>(L) * static_cast<std::size_t>(L), value) {}

  int L() const { return L_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(L_) + static_cast<std::size_t>(x);
  }

  std::span<T> row(int y) { return {data_.data() + index(0, y), static_cast<std::size_t>(L_)}; }
  std::span<const T> row(int y) const {
    return {data_.data() + index(0, y), static_cast<std::size_t>(L_)};
  }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  bool operator==(const Field2D&) const = default;

 private:
  int L_ = 0;
  std::vector<T> data_;
};

using ComplexField = Field2D<Complex>;
using RealField = Field2D<double>;

// Periodic wrap of a site index into [0, L).
inline int wrap_index(int i, int L) {
  const int r = i % L;
  return r < 0 ? r + L : r;
}

// The macroscopic wave function psi on a grid.
struct WaveField {
  Grid grid;
  ComplexField psi;

  WaveField() = default;
  explicit WaveField(const Grid& g) : grid(g), psi(g.L()) {}
  WaveField(const Grid& g, ComplexField values);
};

}  // namespace gpqla
