#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <utility>

#include "idsolve/errors.hpp"

namespace idsolve::detail {

namespace {

// FFTW_UNALIGNED lets one plan serve any std::vector buffer of the right
// size; FFTW_ESTIMATE keeps planning deterministic (no runtime measurement).
fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> probe(n);
    auto* buf = reinterpret_cast<fftw_complex*>(probe.data());
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw Error("fftw plan creation failed");
    cache.emplace(key, p);
    return p;
}

} // namespace

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in,
                                      int sign) {
    if (in.empty()) return {};
    fftw_plan p = plan_for(in.size(), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    std::vector<std::complex<double>> out(in.size());
    auto* src = const_cast<fftw_complex*>(
        reinterpret_cast<const fftw_complex*>(in.data()));
    fftw_execute_dft(p, src, reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

} // namespace idsolve::detail
