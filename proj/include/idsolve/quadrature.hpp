#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace idsolve {

// Composite Simpson over M uniform panels of width h, closing the interval
// with the wrap value f_M := f_0 (exact for periodic data; for decaying
// box-truncated data the wrap sample is negligible by construction).
// samples.size() must be even and >= 2.
double simpson_wrap(const std::vector<double>& samples, double h);
std::complex<double> simpson_wrap(const std::vector<std::complex<double>>& samples,
                                  double h);

// Composite Simpson of a callable over [a, b] with `panels` panels
// (panels made even internally).
double simpson_integrate(const std::function<double(double)>& f, double a,
                         double b, std::size_t panels);
std::complex<double> simpson_integrate_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    std::size_t panels);

} // namespace idsolve
