#pragma once

#include <cstdint>

#include "gpqla/field.hpp"

namespace gpqla {

enum class Axis { x, y };
enum class Component { q0 = 0, q1 = 1 };

struct CouplingParams {
  double g = 0.0;
};

// Two-component spinor (q0, q1) whose sum is the GP wave function.
//
// When built with from_wave() q0 holds Re(psi) and q1 holds i*Im(psi). Every
// operator in this module preserves that real/imaginary split, which keeps the
// overlap q0* q1 + q0 q1* at zero and makes sum |q0 + q1|^2 an exact invariant.
class SpinorField {
 public:
  explicit SpinorField(const Grid& grid);

  static SpinorField from_wave(const WaveField& wave);

  const Grid& grid() const { return grid_; }

  ComplexField& q0() { return q0_; }
  ComplexField& q1() { return q1_; }
  const ComplexField& q0() const { return q0_; }
  const ComplexField& q1() const { return q1_; }
  ComplexField& component(Component c) { return c == Component::q0 ? q0_ : q1_; }

  std::int64_t iteration() const { return iteration_; }
  void set_iteration(std::int64_t t) { iteration_ = t; }

  WaveField wave() const;

  // sum over sites of |q0|^2 + |q1|^2.
  double norm() const;
  // sum over sites of |q0 + q1|^2.
  double density_sum() const;
  // max over sites of |Im q0| and |Re q1|; zero for an exactly split spinor.
  double structure_defect() const;
  // max over sites of |q0 + q1|.
  double max_amplitude() const;
  bool all_finite() const;

  bool operator==(const SpinorField&) const = default;

 private:
  Grid grid_;
  ComplexField q0_;
  ComplexField q1_;
  std::int64_t iteration_ = 0;
};

// Site-local sqrt(SWAP) collision, C = 1/2 [[1-i, 1+i], [1+i, 1-i]].
void collide(SpinorField& field);

// Cyclic one-site shift of one component. sign=+1 moves content towards +axis.
void stream(SpinorField& field, Axis axis, int sign, Component component);

// C, then S(+), then C, then S(-): the operator product S(-) C S(+) C.
void interleave(SpinorField& field, Axis axis, Component component);

// Two interleaves along x followed by two along y.
void evolve_u(SpinorField& field, Component component);

// exp(-i sigma_x * scale * V * dt) at every site. Throws NonFiniteSiteError
// naming the first offending site if V is not finite.
void potential_rotate(SpinorField& field, const RealField& potential, double scale);

// V = g |q0 + q1|^2.
void nonlinear_potential(const SpinorField& field, double g, RealField& out);

// One full time step of size dx^2:
//   q <- U1 Omega[V(t+dt/2)/2] U0 Omega[V(t)/2] q
// with V(t+dt/2) taken from psi after the first half.
void step(SpinorField& field, const CouplingParams& params);

// Reusable stepper that keeps the potential buffer between steps.
class Stepper {
 public:
  Stepper(const Grid& grid, CouplingParams params);

  void step(SpinorField& field);
  void advance(SpinorField& field, std::int64_t steps);

  const CouplingParams& params() const { return params_; }

 private:
  CouplingParams params_;
  RealField potential_;
};

}  // namespace gpqla
