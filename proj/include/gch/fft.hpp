#pragma once

#include <complex>
#include <vector>

#include "gch/grid.hpp"

namespace gch {

// One-sided real spectrum, bins k = 0..N/2. Coefficients follow the FFTW
// convention: values[i] = (1/N) * sum_k c_k exp(i xi_k x_i) + c.c. after
// normalization in irfft.
using Spectrum = std::vector<std::complex<double>>;

// Forward real FFT (unnormalized, FFTW r2c layout).
Spectrum rfft(const GridFunction& u);

// Inverse of rfft, including the 1/N normalization.
GridFunction irfft(const Spectrum& spec, const GridSpec& grid);

// Apply a real frequency multiplier sigma(xi_k), k = 0..N/2.
GridFunction apply_multiplier(const GridFunction& u, const std::vector<double>& sigma);

}  // namespace gch
