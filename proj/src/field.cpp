#include "idsolve/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft_backend.hpp"
#include "idsolve/errors.hpp"

namespace idsolve {

namespace {

double max_abs(const std::vector<complexd>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

} // namespace

std::vector<complexd> forward_transform(const std::vector<double>& physical,
                                        const DomainSpec& domain) {
    if (physical.size() != domain.num_physical())
        throw GridMismatch("forward_transform: " + std::to_string(physical.size()) +
                           " samples for a " + std::to_string(domain.num_physical()) +
                           "-point grid");
    const std::size_t M = domain.num_physical();
    std::vector<complexd> in(M);
    for (std::size_t i = 0; i < M; ++i) in[i] = physical[i];
    auto bins = detail::dft(in, -1);

    std::vector<complexd> out(domain.num_spectral());
    if (domain.is_real_line()) {
        // S_j = (dx/sqrt(2pi)) * (-1)^j * DFT_j, the (-1)^j factor carrying
        // the e^{+ip X} phase of the -X grid origin
        const double scale = domain.dx() / kSqrt2Pi;
        for (std::size_t idx = 0; idx < out.size(); ++idx) {
            long j = domain.mode_number(idx);
            std::size_t bin = static_cast<std::size_t>(((j % (long)M) + (long)M) % (long)M);
            double sgn = (j & 1L) ? -1.0 : 1.0;
            out[idx] = scale * sgn * bins[bin];
        }
    } else {
        // G_n = (sqrt(2pi)/M) * DFT_n
        const double scale = kSqrt2Pi / static_cast<double>(M);
        for (std::size_t idx = 0; idx < out.size(); ++idx) {
            long n = domain.mode_number(idx);
            std::size_t bin = static_cast<std::size_t>(((n % (long)M) + (long)M) % (long)M);
            out[idx] = scale * bins[bin];
        }
    }
    return out;
}

std::vector<double> inverse_transform(const std::vector<complexd>& spectrum,
                                      const DomainSpec& domain) {
    if (spectrum.size() != domain.num_spectral())
        throw GridMismatch("inverse_transform: " + std::to_string(spectrum.size()) +
                           " spectral values for a " +
                           std::to_string(domain.num_spectral()) + "-entry grid");
    const std::size_t M = domain.num_physical();
    std::vector<complexd> bins(M, complexd(0.0, 0.0));
    double scale;
    if (domain.is_real_line()) {
        scale = domain.dp() / kSqrt2Pi;
        for (std::size_t idx = 0; idx < spectrum.size(); ++idx) {
            long j = domain.mode_number(idx);
            std::size_t bin = static_cast<std::size_t>(((j % (long)M) + (long)M) % (long)M);
            double sgn = (j & 1L) ? -1.0 : 1.0;
            bins[bin] = sgn * spectrum[idx];
        }
    } else {
        scale = 1.0 / kSqrt2Pi;
        for (std::size_t idx = 0; idx < spectrum.size(); ++idx) {
            long n = domain.mode_number(idx);
            std::size_t bin = static_cast<std::size_t>(((n % (long)M) + (long)M) % (long)M);
            bins[bin] = spectrum[idx];
        }
    }
    auto phys = detail::dft(bins, +1);

    const double thresh = 1e-10 * max_abs(spectrum);
    std::vector<double> out(M);
    double worst_imag = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        complexd z = scale * phys[i];
        worst_imag = std::max(worst_imag, std::abs(z.imag()));
        out[i] = z.real();
    }
    if (worst_imag > thresh && worst_imag > 1e-300)
        throw NonRealResult("inverse_transform imaginary residue " +
                            std::to_string(worst_imag) +
                            " exceeds 1e-10 * max|spectrum|; conjugate symmetry "
                            "violated upstream");
    return out;
}

SpectralField::SpectralField(DomainSpec d, std::vector<double> ph,
                             std::vector<complexd> sp)
    : domain_(d), physical_(std::move(ph)), spectrum_(std::move(sp)) {
    if (domain_.is_real_line()) {
        double mx = 0.0;
        for (double v : physical_) mx = std::max(mx, std::abs(v));
        const std::size_t edge = physical_.size() / 40; // 2.5% per side
        for (std::size_t i = 0; i < physical_.size(); ++i) {
            if (i >= edge && i < physical_.size() - edge) continue;
            if (std::abs(physical_[i]) > 1e-12 * mx) {
                truncation_warning_ = true;
                break;
            }
        }
    }
}

SpectralField SpectralField::from_physical(const DomainSpec& domain,
                                           std::vector<double> physical) {
    for (double v : physical)
        if (!std::isfinite(v))
            throw NonFiniteValue("SpectralField::from_physical");
    auto sp = forward_transform(physical, domain);
    return SpectralField(domain, std::move(physical), std::move(sp));
}

SpectralField SpectralField::from_spectrum(const DomainSpec& domain,
                                           std::vector<complexd> spectrum) {
    for (const auto& z : spectrum)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NonFiniteValue("SpectralField::from_spectrum");
    auto ph = inverse_transform(spectrum, domain);
    // re-derive the spectrum from the (now real) samples so the pair is
    // consistent under forward_transform even when the input spectrum
    // carried a sub-threshold asymmetry
    auto sp = forward_transform(ph, domain);
    return SpectralField(domain, std::move(ph), std::move(sp));
}

SpectralField SpectralField::zero(const DomainSpec& domain) {
    return SpectralField(domain, std::vector<double>(domain.num_physical(), 0.0),
                         std::vector<complexd>(domain.num_spectral(),
                                               complexd(0.0, 0.0)));
}

double SpectralField::consistency_gap() const {
    auto fresh = forward_transform(physical_, domain_);
    double scale = std::max(max_abs(spectrum_), 1e-300);
    double worst = 0.0;
    for (std::size_t i = 0; i < fresh.size(); ++i)
        worst = std::max(worst, std::abs(fresh[i] - spectrum_[i]));
    return worst / scale;
}

VectorField::VectorField(std::vector<SpectralField> components)
    : components_(std::move(components)) {
    if (components_.empty())
        throw GridMismatch("VectorField requires at least one component");
    for (const auto& c : components_)
        if (c.domain() != components_.front().domain())
            throw GridMismatch("VectorField components on different grids");
}

VectorField VectorField::zero(const DomainSpec& domain, std::size_t n) {
    std::vector<SpectralField> cs;
    cs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) cs.push_back(SpectralField::zero(domain));
    return VectorField(std::move(cs));
}

const DomainSpec& VectorField::domain() const {
    if (components_.empty())
        throw GridMismatch("empty VectorField has no domain");
    return components_.front().domain();
}

namespace {

double h2_sq(const SpectralField& f) {
    const auto& dom = f.domain();
    const auto& sp = f.spectrum();
    const double weight = dom.is_real_line() ? dom.dp() : 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        double p = dom.frequency(i);
        double p4 = p * p * p * p;
        acc += (1.0 + p4) * std::norm(sp[i]);
    }
    return weight * acc;
}

} // namespace

double h2_norm(const SpectralField& f) { return std::sqrt(h2_sq(f)); }

double h2_norm(const VectorField& u) {
    double acc = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) acc += h2_sq(u[k]);
    return std::sqrt(acc);
}

double h2_norm_difference(const VectorField& a, const VectorField& b) {
    if (a.size() != b.size() || a.domain() != b.domain())
        throw GridMismatch("h2_norm_difference");
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto& sa = a[k].spectrum();
        const auto& sb = b[k].spectrum();
        const auto& dom = a.domain();
        const double weight = dom.is_real_line() ? dom.dp() : 1.0;
        double comp = 0.0;
        for (std::size_t i = 0; i < sa.size(); ++i) {
            double p = dom.frequency(i);
            comp += (1.0 + p * p * p * p) * std::norm(sa[i] - sb[i]);
        }
        acc += weight * comp;
    }
    return std::sqrt(acc);
}

double plancherel_gap(const SpectralField& f) {
    const auto& dom = f.domain();
    double phys = 0.0;
    for (double v : f.physical()) phys += v * v;
    phys *= dom.dx();
    double spec = 0.0;
    for (const auto& z : f.spectrum()) spec += std::norm(z);
    spec *= dom.is_real_line() ? dom.dp() : 1.0;
    return std::abs(phys - spec) / std::max(phys, 1e-30);
}

} // namespace idsolve
