#pragma once

// Shared test oracles.  Everything here is deliberately independent of the
// library's fast paths: adaptive Gauss-Kronrod quadrature for transforms,
// a dense-grid + golden-section minimizer for |symbol|, and a literal DFT.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "idsolve/domain.hpp"
#include "idsolve/field.hpp"

namespace testsupport {

using idsolve::complexd;
using idsolve::DomainSpec;
using idsolve::kSqrt2Pi;

// (1/sqrt(2pi)) int_{-X}^{X} f(x) e^{-isx} dx by adaptive quadrature
inline complexd oracle_ft(const std::function<double(double)>& f, double s,
                          double X) {
    using boost::math::quadrature::gauss_kronrod;
    auto re = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return f(x) * std::cos(s * x); }, -X, X, 12, 1e-14);
    auto im = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return -f(x) * std::sin(s * x); }, -X, X, 12, 1e-14);
    return complexd(re, im) / kSqrt2Pi;
}

// d/ds of the above: quadrature of -i x f(x) e^{-isx} / sqrt(2pi)
inline complexd oracle_ft_deriv(const std::function<double(double)>& f, double s,
                                double X) {
    using boost::math::quadrature::gauss_kronrod;
    auto re = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return -x * f(x) * std::sin(s * x); }, -X, X, 12, 1e-14);
    auto im = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return -x * f(x) * std::cos(s * x); }, -X, X, 12, 1e-14);
    return complexd(re, im) / kSqrt2Pi;
}

inline double abs_symbol(double p, double a, double b) {
    return std::abs(complexd(p * p - a, -b * p));
}

// dense scan + golden-section polish; the reference for the closed-form
// minimum of |p^2 - a - i b p|
inline double dense_min_abs_symbol(double a, double b, double lo = -40.0,
                                   double hi = 40.0, double step = 1e-3) {
    double best = abs_symbol(lo, a, b);
    double best_p = lo;
    for (double p = lo; p <= hi; p += step) {
        double v = abs_symbol(p, a, b);
        if (v < best) {
            best = v;
            best_p = p;
        }
    }
    double l = best_p - step, r = best_p + step;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = r - phi * (r - l), x2 = l + phi * (r - l);
    double f1 = abs_symbol(x1, a, b), f2 = abs_symbol(x2, a, b);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            r = x2;
            x2 = x1;
            f2 = f1;
            x1 = r - phi * (r - l);
            f1 = abs_symbol(x1, a, b);
        } else {
            l = x1;
            x1 = x2;
            f1 = f2;
            x2 = l + phi * (r - l);
            f2 = abs_symbol(x2, a, b);
        }
    }
    return std::min({best, f1, f2});
}

// integer-mode reference for the periodic symbol minimum
inline double dense_min_abs_symbol_periodic(double a, double b,
                                            long n_hi = 1000) {
    double best = abs_symbol(0.0, a, b);
    for (long n = -n_hi; n <= n_hi; ++n)
        best = std::min(best, abs_symbol(static_cast<double>(n), a, b));
    return best;
}

// literal O(M^2) realization of the same discrete transform conventions
inline std::vector<complexd> naive_forward(const std::vector<double>& f,
                                           const DomainSpec& d) {
    const std::size_t M = f.size();
    std::vector<complexd> out(d.num_spectral());
    if (d.is_real_line()) {
        for (std::size_t j = 0; j < d.num_spectral(); ++j) {
            double p = d.frequency(j);
            complexd acc{0.0, 0.0};
            for (std::size_t i = 0; i < M; ++i) {
                double x = d.physical_point(i);
                acc += f[i] * std::exp(complexd(0.0, -p * x));
            }
            out[j] = acc * d.dx() / kSqrt2Pi;
        }
    } else {
        for (std::size_t j = 0; j < d.num_spectral(); ++j) {
            double n = d.frequency(j);
            complexd acc{0.0, 0.0};
            for (std::size_t i = 0; i < M; ++i) {
                double x = d.physical_point(i);
                acc += f[i] * std::exp(complexd(0.0, -n * x));
            }
            out[j] = acc * d.dx() / kSqrt2Pi;
        }
    }
    return out;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& stem) {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0;; ++i) {
            auto candidate = base / (stem + "-" + std::to_string(::getpid()) +
                                     "-" + std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directories(candidate, ec)) {
                path = candidate;
                return;
            }
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// run the installed binary (path from IDSOLVE_BIN) with the given argument
// string; stdout/stderr captured through files in `dir`
inline CliResult run_cli(const std::string& args, const TempDir& dir) {
    const char* bin = std::getenv("IDSOLVE_BIN");
    CliResult r;
    if (!bin) return r;
    std::string out_f = dir.file("stdout.txt");
    std::string err_f = dir.file("stderr.txt");
    std::string cmd = std::string("\"") + bin + "\" " + args + " > \"" + out_f +
                      "\" 2> \"" + err_f + "\"";
    int status = std::system(cmd.c_str());
    if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    r.out = read_file(out_f);
    r.err = read_file(err_f);
    return r;
}

} // namespace testsupport
