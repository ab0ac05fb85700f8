#pragma once

#include <complex>
#include <vector>

namespace idsolve::detail {

// Unnormalized DFT: out_k = sum_m in_m * exp(sign * 2*pi*i * k*m / n),
// sign = -1 forward, +1 backward.  Backed by FFTW with a per-size plan cache.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in,
                                      int sign);

} // namespace idsolve::detail
