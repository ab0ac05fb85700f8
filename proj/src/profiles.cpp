#include "idsolve/profiles.hpp"

#include <cmath>
#include <string>

#include "idsolve/errors.hpp"

namespace idsolve {

Profile Profile::zero() { return Profile{}; }

Profile Profile::gaussian(double amplitude, double sigma) {
    Profile p;
    p.family = ProfileFamily::Gaussian;
    p.amplitude = amplitude;
    p.sigma = sigma;
    if (!(sigma > 0.0)) throw DomainError("gaussian profile requires sigma > 0");
    return p;
}

Profile Profile::odd_gaussian(double amplitude, double sigma) {
    Profile p;
    p.family = ProfileFamily::OddGaussian;
    p.amplitude = amplitude;
    p.sigma = sigma;
    if (!(sigma > 0.0)) throw DomainError("odd-gaussian profile requires sigma > 0");
    return p;
}

Profile Profile::cosine(double amplitude, int harmonic, double phase) {
    Profile p;
    p.family = ProfileFamily::Cosine;
    p.amplitude = amplitude;
    p.harmonic = harmonic;
    p.phase = phase;
    return p;
}

Profile Profile::tabulated(std::vector<double> values) {
    Profile p;
    p.family = ProfileFamily::Tabulated;
    p.values = std::move(values);
    return p;
}

double Profile::operator()(double x) const {
    switch (family) {
        case ProfileFamily::Zero:
            return 0.0;
        case ProfileFamily::Gaussian:
            return amplitude * std::exp(-x * x / (2.0 * sigma * sigma));
        case ProfileFamily::OddGaussian:
            return amplitude * x * std::exp(-x * x / (2.0 * sigma * sigma));
        case ProfileFamily::Cosine:
            return amplitude * std::cos(harmonic * x - phase);
        case ProfileFamily::Tabulated:
            throw DomainError("tabulated profile is not evaluable off-grid");
    }
    return 0.0;
}

std::vector<double> Profile::sample(const DomainSpec& domain) const {
    if (family == ProfileFamily::Tabulated) {
        if (values.size() != domain.num_physical())
            throw GridMismatch("tabulated profile has " +
                               std::to_string(values.size()) + " samples, grid has " +
                               std::to_string(domain.num_physical()));
        return values;
    }
    std::vector<double> out(domain.num_physical());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (*this)(domain.physical_point(i));
    return out;
}

std::string Profile::family_name() const {
    switch (family) {
        case ProfileFamily::Zero: return "zero";
        case ProfileFamily::Gaussian: return "gaussian";
        case ProfileFamily::OddGaussian: return "odd-gaussian";
        case ProfileFamily::Cosine: return "cosine";
        case ProfileFamily::Tabulated: return "tabulated";
    }
    return "?";
}

} // namespace idsolve
