#include "gpqla/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gpqla/errors.hpp"
#include "parallel.hpp"

namespace gpqla {

namespace {

// Views a complex element as its (re, im) pair.
inline double* parts(Complex& z) { return reinterpret_cast<double*>(&z); }

void shift_rows_along_x(ComplexField& f, int sign) {
  const int L = f.L();
  detail::for_each_row(L, [&](int y) {
    auto row = f.row(y);
    if (sign > 0) {
      const Complex last = row[L - 1];
      std::copy_backward(row.begin(), row.end() - 1, row.end());
      row[0] = last;
    } else {
      const Complex first = row[0];
      std::copy(row.begin() + 1, row.end(), row.begin());
      row[L - 1] = first;
    }
  });
}

void shift_rows_along_y(ComplexField& f, int sign) {
  const int L = f.L();
  const auto n = static_cast<std::ptrdiff_t>(L);
  Complex* base = f.data();
  Complex* end = base + f.size();
  std::vector<Complex> saved(static_cast<std::size_t>(L));
  if (sign > 0) {
    std::copy(end - n, end, saved.begin());
    std::copy_backward(base, end - n, end);
    std::copy(saved.begin(), saved.end(), base);
  } else {
    std::copy(base, base + n, saved.begin());
    std::copy(base + n, end, base);
    std::copy(saved.begin(), saved.end(), end - n);
  }
}

}  // namespace

SpinorField::SpinorField(const Grid& grid) : grid_(grid), q0_(grid.L()), q1_(grid.L()) {}

SpinorField SpinorField::from_wave(const WaveField& wave) {
  SpinorField s(wave.grid);
  for (std::size_t i = 0; i < wave.psi.size(); ++i) {
    s.q0_[i] = Complex(wave.psi[i].real(), 0.0);
    s.q1_[i] = Complex(0.0, wave.psi[i].imag());
  }
  return s;
}

WaveField SpinorField::wave() const {
  WaveField w(grid_);
  for (std::size_t i = 0; i < q0_.size(); ++i) w.psi[i] = q0_[i] + q1_[i];
  return w;
}

double SpinorField::norm() const {
  const int L = grid_.L();
  return detail::row_sum(L, [&](int y) {
    double s = 0.0;
    auto a = q0_.row(y);
    auto b = q1_.row(y);
    for (int x = 0; x < L; ++x) s += std::norm(a[x]) + std::norm(b[x]);
    return s;
  });
}

double SpinorField::density_sum() const {
  const int L = grid_.L();
  return detail::row_sum(L, [&](int y) {
    double s = 0.0;
    auto a = q0_.row(y);
    auto b = q1_.row(y);
    for (int x = 0; x < L; ++x) s += std::norm(a[x] + b[x]);
    return s;
  });
}

double SpinorField::structure_defect() const {
  const int L = grid_.L();
  return detail::row_max(L, [&](int y) {
    double m = 0.0;
    auto a = q0_.row(y);
    auto b = q1_.row(y);
    for (int x = 0; x < L; ++x) m = std::max({m, std::abs(a[x].imag()), std::abs(b[x].real())});
    return m;
  });
}

double SpinorField::max_amplitude() const {
  const int L = grid_.L();
  return detail::row_max(L, [&](int y) {
    double m = 0.0;
    auto a = q0_.row(y);
    auto b = q1_.row(y);
    for (int x = 0; x < L; ++x) m = std::max(m, std::abs(a[x] + b[x]));
    return m;
  });
}

bool SpinorField::all_finite() const {
  auto finite = [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  return std::all_of(q0_.values().begin(), q0_.values().end(), finite) &&
         std::all_of(q1_.values().begin(), q1_.values().end(), finite);
}

void collide(SpinorField& field) {
  const int L = field.grid().L();
  detail::for_each_row(L, [&](int y) {
    auto ra = field.q0().row(y);
    auto rb = field.q1().row(y);
    for (int x = 0; x < L; ++x) {
      double* a = parts(ra[x]);
      double* b = parts(rb[x]);
      const double ar = a[0], ai = a[1], br = b[0], bi = b[1];
      a[0] = 0.5 * (ar + ai + br - bi);
      a[1] = 0.5 * (ai - ar + bi + br);
      b[0] = 0.5 * (ar - ai + br + bi);
      b[1] = 0.5 * (ai + ar + bi - br);
    }
  });
}

void stream(SpinorField& field, Axis axis, int sign, Component component) {
  ComplexField& f = field.component(component);
  const int s = sign >= 0 ? 1 : -1;
  if (axis == Axis::x)
    shift_rows_along_x(f, s);
  else
    shift_rows_along_y(f, s);
}

void interleave(SpinorField& field, Axis axis, Component component) {
  collide(field);
  stream(field, axis, +1, component);
  collide(field);
  stream(field, axis, -1, component);
}

void evolve_u(SpinorField& field, Component component) {
  interleave(field, Axis::x, component);
  interleave(field, Axis::x, component);
  interleave(field, Axis::y, component);
  interleave(field, Axis::y, component);
}

void potential_rotate(SpinorField& field, const RealField& potential, double scale) {
  const int L = field.grid().L();
  if (potential.L() != L) throw ConfigError("potential_rotate: potential size does not match field");
  const auto bad = std::find_if(potential.values().begin(), potential.values().end(),
                                [](double v) { return !std::isfinite(v); });
  if (bad != potential.values().end()) {
    const auto i = static_cast<int>(bad - potential.values().begin());
    const int x = i % L, y = i / L;
    throw NonFiniteSiteError(x, y,
                             "non-finite potential at site (" + std::to_string(x) + ", " +
                                 std::to_string(y) + ")");
  }
  const double factor = scale * field.grid().dt();
  detail::for_each_row(L, [&](int y) {
    auto ra = field.q0().row(y);
    auto rb = field.q1().row(y);
    auto rv = potential.row(y);
    for (int x = 0; x < L; ++x) {
      const double angle = factor * rv[x];
      const double c = std::cos(angle);
      const double s = std::sin(angle);
      double* a = parts(ra[x]);
      double* b = parts(rb[x]);
      const double ar = a[0], ai = a[1], br = b[0], bi = b[1];
      a[0] = c * ar + s * bi;
      a[1] = c * ai - s * br;
      b[0] = c * br + s * ai;
      b[1] = c * bi - s * ar;
    }
  });
}

void nonlinear_potential(const SpinorField& field, double g, RealField& out) {
  const int L = field.grid().L();
  if (out.L() != L) out = RealField(L);
  detail::for_each_row(L, [&](int y) {
    auto ra = field.q0().row(y);
    auto rb = field.q1().row(y);
    auto rv = out.row(y);
    for (int x = 0; x < L; ++x) rv[x] = g * std::norm(ra[x] + rb[x]);
  });
}

Stepper::Stepper(const Grid& grid, CouplingParams params)
    : params_(params), potential_(grid.L()) {}

void Stepper::step(SpinorField& field) {
  nonlinear_potential(field, params_.g, potential_);
  potential_rotate(field, potential_, 0.5);
  evolve_u(field, Component::q0);
  nonlinear_potential(field, params_.g, potential_);
  potential_rotate(field, potential_, 0.5);
  evolve_u(field, Component::q1);
  field.set_iteration(field.iteration() + 1);
}

void Stepper::advance(SpinorField& field, std::int64_t steps) {
  for (std::int64_t n = 0; n < steps; ++n) step(field);
}

void step(SpinorField& field, const CouplingParams& params) {
  Stepper stepper(field.grid(), params);
  stepper.step(field);
}

}  // namespace gpqla
