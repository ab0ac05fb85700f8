#pragma once

#include <functional>
#include <string>
#include <vector>

#include "idsolve/domain.hpp"

namespace idsolve {

// Closed-form function families used for kernels and forcing profiles; the
// set mirrors what the config format accepts.  Tabulated profiles carry raw
// grid samples and are not evaluable off-grid.
enum class ProfileFamily { Zero, Gaussian, OddGaussian, Cosine, Tabulated };

struct Profile {
    ProfileFamily family = ProfileFamily::Zero;
    double amplitude = 1.0;
    double sigma = 1.0;    // gaussian families
    int harmonic = 1;      // cosine
    double phase = 0.0;    // cosine
    std::vector<double> values; // tabulated

    static Profile zero();
    static Profile gaussian(double amplitude = 1.0, double sigma = 1.0);
    static Profile odd_gaussian(double amplitude = 1.0, double sigma = 1.0);
    static Profile cosine(double amplitude = 1.0, int harmonic = 1,
                          double phase = 0.0);
    static Profile tabulated(std::vector<double> values);

    bool analytic() const { return family != ProfileFamily::Tabulated; }
    double operator()(double x) const; // throws DomainError for tabulated
    std::vector<double> sample(const DomainSpec& domain) const;
    std::string family_name() const;
};

} // namespace idsolve
