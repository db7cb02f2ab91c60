#pragma once

#include <vector>

#include "gpqla/field.hpp"

namespace gpqla {

// Unnormalised 2D DFT, X[k] = sum_x x[n] exp(-2 pi i k.n / L).
ComplexField fft2(const ComplexField& in);

// Normalised inverse, so inverse_fft2(fft2(f)) == f up to rounding.
ComplexField inverse_fft2(const ComplexField& in);

// Physical angular wavenumbers 2 pi n / (L dx) in DFT order.
std::vector<double> wavenumbers(const Grid& grid);

// As wavenumbers() with the Nyquist entry set to zero, for odd derivatives.
std::vector<double> derivative_wavenumbers(const Grid& grid);

// Signed integer mode numbers in DFT order: 0, 1, ..., L/2 - 1, -L/2, ..., -1.
std::vector<int> mode_numbers(int L);

// mode_numbers() with the Nyquist entry set to zero.
std::vector<int> derivative_mode_numbers(int L);

}  // namespace gpqla
