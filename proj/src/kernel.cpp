#include "idsolve/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idsolve/errors.hpp"
#include "idsolve/quadrature.hpp"

namespace idsolve {

namespace {

constexpr std::size_t kRefinedPanels = 16384;

complexd quad_ft(const Profile& G, const DomainSpec& domain, double s,
                 bool derivative) {
    const complexd mi(0.0, -1.0);
    if (G.family == ProfileFamily::Tabulated) {
        const auto samples = G.sample(domain);
        const std::size_t M = domain.num_physical();
        std::vector<complexd> integrand(M);
        for (std::size_t i = 0; i < M; ++i) {
            double x = domain.physical_point(i);
            complexd phase = std::exp(mi * s * x);
            complexd val = samples[i] * phase;
            if (derivative) val *= mi * x;
            integrand[i] = val;
        }
        return simpson_wrap(integrand, domain.dx()) / kSqrt2Pi;
    }
    const double a = domain.is_real_line() ? -domain.half_width() : 0.0;
    const double b = domain.is_real_line() ? domain.half_width() : 2.0 * kPi;
    std::size_t panels = std::max<std::size_t>(kRefinedPanels,
                                               4 * domain.num_physical());
    auto f = [&](double x) -> complexd {
        complexd val = G(x) * std::exp(mi * s * x);
        if (derivative) val *= mi * x;
        return val;
    };
    return simpson_integrate_c(f, a, b, panels) / kSqrt2Pi;
}

} // namespace

const KernelSpectrum::SpecialValue* KernelSpectrum::find_special(double s) const {
    for (const auto& sv : special)
        if (std::abs(sv.s - s) <= 1e-12 * std::max(1.0, std::abs(s))) return &sv;
    return nullptr;
}

std::tuple<double, double, double> kernel_moments(const std::vector<double>& G,
                                                  const DomainSpec& domain) {
    if (domain.is_periodic())
        throw DomainError("kernel_moments: integrability moments are a "
                          "real-line notion; periodic kernels need only continuity");
    if (G.size() != domain.num_physical())
        throw GridMismatch("kernel_moments sample count");
    const std::size_t M = G.size();
    std::vector<double> a0(M), a1(M), a2(M);
    for (std::size_t i = 0; i < M; ++i) {
        double x = domain.physical_point(i);
        double g = std::abs(G[i]);
        a0[i] = g;
        a1[i] = std::abs(x) * g;
        a2[i] = x * x * g;
    }
    const double h = domain.dx();
    return {simpson_wrap(a0, h), simpson_wrap(a1, h), simpson_wrap(a2, h)};
}

complexd kernel_ft_at(const KernelSpectrum& ks, double s) {
    return quad_ft(ks.source, ks.base.domain(), s, false);
}

complexd kernel_ft_deriv_at(const KernelSpectrum& ks, double s) {
    return quad_ft(ks.source, ks.base.domain(), s, true);
}

KernelSpectrum spectral_profile(const Profile& G, const DomainSpec& domain,
                                const std::vector<double>& special_points) {
    KernelSpectrum ks{SpectralField::from_physical(domain, G.sample(domain)),
                      G};
    ks.truncation_warning = ks.base.truncation_warning();

    const auto& samples = ks.base.physical();
    if (domain.is_real_line()) {
        std::tie(ks.m0, ks.m1, ks.m2) = kernel_moments(samples, domain);
    } else {
        std::vector<double> absG(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            absG[i] = std::abs(samples[i]);
        ks.m0 = simpson_wrap(absG, domain.dx());
        ks.c_norm = *std::max_element(absG.begin(), absG.end());
    }

    for (const auto& z : ks.base.spectrum())
        ks.sup_bound = std::max(ks.sup_bound, std::abs(z));

    // invariant (||G^||_inf <= m0/sqrt(2pi), and its periodic analogue)
    if (ks.sup_bound > ks.m0 / kSqrt2Pi + 1e-10)
        throw Error("kernel spectrum violates the L1 sup bound: sup|G^| = " +
                    std::to_string(ks.sup_bound) + " > m0/sqrt(2pi) = " +
                    std::to_string(ks.m0 / kSqrt2Pi));

    for (double s : special_points) {
        KernelSpectrum::SpecialValue sv;
        sv.s = s;
        sv.value = quad_ft(G, domain, s, false);
        sv.derivative = domain.is_real_line() ? quad_ft(G, domain, s, true)
                                              : complexd(0.0, 0.0);
        ks.special.push_back(sv);
    }
    return ks;
}

namespace {

const KernelSpectrum::SpecialValue& require_special(const KernelSpectrum& ks,
                                                    double s,
                                                    const char* condition) {
    const auto* sv = ks.find_special(s);
    if (!sv)
        throw MissingSpecialValue(std::string(condition) +
                                  " needs the kernel transform at p = " +
                                  std::to_string(s));
    return *sv;
}

} // namespace

OrthogonalityReport check_orthogonality(const KernelSpectrum& ks, CaseTag tag,
                                        const EquationSpec& eq) {
    OrthogonalityReport report;
    const double scale = ks.orth_scale();
    auto add = [&](std::string name, complexd raw, double sc) {
        OrthogonalityReport::Entry e;
        e.name = std::move(name);
        e.raw = raw;
        e.scale = sc;
        e.pass = std::abs(raw) <= kOrthTolerance * sc;
        report.entries.push_back(e);
    };

    switch (tag) {
        case CaseTag::RLineA:
        case CaseTag::PeriodicA:
        case CaseTag::PeriodicC:
            break; // no conditions
        case CaseTag::RLineB:
            add("or1", require_special(ks, 0.0, "or1").value, scale);
            break;
        case CaseTag::RLineC: {
            const double ra = std::sqrt(eq.a);
            add("or12+", require_special(ks, ra, "or12+").value, scale);
            add("or12-", require_special(ks, -ra, "or12-").value, scale);
            break;
        }
        case CaseTag::RLineD: {
            const auto& sv = require_special(ks, 0.0, "or13");
            add("or13-mass", sv.value, scale);
            add("or13-dipole", sv.derivative,
                std::max(ks.m1 / kSqrt2Pi, 1e-300));
            break;
        }
        case CaseTag::PeriodicB:
        case CaseTag::PeriodicE:
            add("or2", ks.base.spectrum()[ks.base.domain().spectral_index(0)],
                scale);
            break;
        case CaseTag::PeriodicD: {
            long nk = eq.resonant_mode ? *eq.resonant_mode
                                       : std::lround(std::sqrt(eq.a));
            const auto& dom = ks.base.domain();
            if (static_cast<std::size_t>(nk) > dom.mode_cutoff())
                throw MissingSpecialValue("or21: resonant mode " +
                                          std::to_string(nk) +
                                          " beyond the mode cutoff");
            add("or21+", ks.base.spectrum()[dom.spectral_index(nk)], scale);
            add("or21-", ks.base.spectrum()[dom.spectral_index(-nk)], scale);
            break;
        }
    }
    return report;
}

EssentialSpectrum essential_spectrum(const EquationSpec& eq,
                                     const DomainSpec& domain,
                                     const std::vector<double>& p_samples) {
    eq.validate();
    EssentialSpectrum es;
    const double a = eq.a;
    const double b = eq.b.value_or(0.0);
    auto lambda = [&](double p) {
        return complexd(p * p - a, -b * p);
    };
    es.curve.reserve(p_samples.size());
    for (double p : p_samples) es.curve.push_back(lambda(p));

    if (domain.is_real_line()) {
        if (eq.b) {
            // |lambda|^2 = (p^2-a)^2 + b^2 p^2, stationary at p^2 = a - b^2/2
            if (a > b * b / 2.0) {
                es.argmin = std::sqrt(a - b * b / 2.0);
                es.min_abs = std::abs(b) * std::sqrt(a - b * b / 4.0);
            } else {
                es.argmin = 0.0;
                es.min_abs = a;
            }
        } else {
            es.argmin = std::sqrt(a); // lambda(+-sqrt(a)) = 0 for every a >= 0
            es.min_abs = 0.0;
        }
    } else {
        es.min_abs = std::abs(lambda(0.0));
        es.argmin = 0.0;
        long n_hi = static_cast<long>(std::ceil(std::sqrt(std::max(a, 1.0)))) + 2;
        for (long n = 1; n <= n_hi; ++n) {
            double v = std::abs(lambda(static_cast<double>(n)));
            if (v < es.min_abs) {
                es.min_abs = v;
                es.argmin = static_cast<double>(n);
            }
        }
        // exact resonance detection: b = 0 and a an integer square
        if (!eq.b) {
            long nr = std::lround(std::sqrt(a));
            if (static_cast<double>(nr) * static_cast<double>(nr) == a) {
                es.min_abs = 0.0;
                es.argmin = static_cast<double>(nr);
            }
        }
    }
    es.fredholm = es.min_abs > 0.0;
    return es;
}

} // namespace idsolve
