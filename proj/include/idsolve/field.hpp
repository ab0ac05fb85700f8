#pragma once

#include <complex>
#include <vector>

#include "idsolve/domain.hpp"

namespace idsolve {

using complexd = std::complex<double>;

// Unitary transform pair.  RealLine: rectangle-rule realization of
// (1/sqrt(2pi)) int f e^{-ipx} dx on [-X, X) through the DFT with the phase
// correction for the -X origin.  PeriodicInterval: exact coefficients
// (1/sqrt(2pi)) int_0^{2pi} f e^{-inx} dx for band-limited f.
std::vector<complexd> forward_transform(const std::vector<double>& physical,
                                        const DomainSpec& domain);
// Left-inverse of forward_transform; the imaginary residue must stay below
// 1e-10 * max|spectrum| or NonRealResult is thrown.
std::vector<double> inverse_transform(const std::vector<complexd>& spectrum,
                                      const DomainSpec& domain);

// A function held as paired physical samples and spectral data on one grid.
class SpectralField {
public:
    static SpectralField from_physical(const DomainSpec& domain,
                                       std::vector<double> physical);
    static SpectralField from_spectrum(const DomainSpec& domain,
                                       std::vector<complexd> spectrum);
    static SpectralField zero(const DomainSpec& domain);

    const DomainSpec& domain() const { return domain_; }
    const std::vector<double>& physical() const { return physical_; }
    const std::vector<complexd>& spectrum() const { return spectrum_; }

    // set when |f| > 1e-12 * max|f| somewhere on the outer 5% of the box
    bool truncation_warning() const { return truncation_warning_; }

    // max relative gap between the stored spectrum and a fresh forward
    // transform of the stored samples (diagnostic, used by tests)
    double consistency_gap() const;

private:
    SpectralField(DomainSpec d, std::vector<double> ph, std::vector<complexd> sp);
    DomainSpec domain_;
    std::vector<double> physical_;
    std::vector<complexd> spectrum_;
    bool truncation_warning_ = false;
};

// Ordered components over one shared grid.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(std::vector<SpectralField> components);

    static VectorField zero(const DomainSpec& domain, std::size_t n);

    std::size_t size() const { return components_.size(); }
    const SpectralField& operator[](std::size_t k) const { return components_[k]; }
    const DomainSpec& domain() const;

private:
    std::vector<SpectralField> components_;
};

// sqrt(sum_k int (1+p^4)|u_k(p)|^2 dp) on R (frequency-domain rectangle
// rule), sqrt(sum_k sum_n (1+n^4)|u_{k,n}|^2) on I: the norm
// ||u||^2 = ||u||_{L2}^2 + ||u''||_{L2}^2 computed spectrally.
double h2_norm(const SpectralField& f);
double h2_norm(const VectorField& u);
double h2_norm_difference(const VectorField& a, const VectorField& b);

// | ||f||^2_{L2,physical} - ||spectrum||^2 | / max(||f||^2, eps)
double plancherel_gap(const SpectralField& f);

} // namespace idsolve
