#include "idsolve/quadrature.hpp"

#include "idsolve/errors.hpp"

namespace idsolve {

namespace {

template <typename T>
T simpson_wrap_impl(const std::vector<T>& samples, double h) {
    const std::size_t M = samples.size();
    if (M < 2 || M % 2 != 0)
        throw GridMismatch("simpson_wrap requires an even sample count >= 2");
    // weights over indices 0..M with f_M = f_0 folded into index 0
    T acc = samples[0] * 2.0;
    for (std::size_t i = 1; i < M; ++i)
        acc += samples[i] * ((i % 2 == 1) ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

} // namespace

double simpson_wrap(const std::vector<double>& samples, double h) {
    return simpson_wrap_impl(samples, h);
}

std::complex<double> simpson_wrap(const std::vector<std::complex<double>>& samples,
                                  double h) {
    return simpson_wrap_impl(samples, h);
}

double simpson_integrate(const std::function<double(double)>& f, double a,
                         double b, std::size_t panels) {
    if (panels < 2) panels = 2;
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    double acc = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i)
        acc += f(a + h * static_cast<double>(i)) * ((i % 2 == 1) ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

std::complex<double> simpson_integrate_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    std::size_t panels) {
    if (panels < 2) panels = 2;
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    std::complex<double> acc = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i)
        acc += f(a + h * static_cast<double>(i)) * ((i % 2 == 1) ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

} // namespace idsolve
