#include "idsolve/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idsolve/errors.hpp"

namespace idsolve {

namespace {

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

} // namespace

MultiplierEvaluator::MultiplierEvaluator(const EquationSpec& eq, CaseTag tag,
                                         const KernelSpectrum& ks)
    : ks_(&ks), domain_(&ks.base.domain()), tag_(tag), a_(eq.a),
      b_(eq.b.value_or(0.0)) {
    switch (tag) {
        case CaseTag::RLineB: {
            windows_.push_back({0.0, 1.0});
            const auto* sv = ks.find_special(0.0);
            if (!sv) throw MissingSpecialValue("R-b multiplier needs G^(0), G^'(0)");
            g0_ = sv->value;
            dg0_ = sv->derivative;
            break;
        }
        case CaseTag::RLineC: {
            const double ra = std::sqrt(a_);
            const double delta = std::min(ra / 2.0, 1.0);
            windows_.push_back({ra, delta});
            windows_.push_back({-ra, delta});
            const auto* svp = ks.find_special(ra);
            const auto* svm = ks.find_special(-ra);
            if (!svp || !svm)
                throw MissingSpecialValue("R-c multiplier needs G^(+-sqrt a)");
            g_sqa_p_ = svp->value;
            g_sqa_m_ = svm->value;
            dg_sqa_p_ = svp->derivative;
            dg_sqa_m_ = svm->derivative;
            break;
        }
        case CaseTag::RLineD: {
            windows_.push_back({0.0, 1.0});
            const auto* sv = ks.find_special(0.0);
            if (!sv) throw MissingSpecialValue("R-d multiplier needs G^(0), G^'(0)");
            g0_ = sv->value;
            dg0_ = sv->derivative;
            // G^''(0) by centered differencing of the quadrature-grade
            // transform with step delta/8
            const double h = windows_.front().half_width / 8.0;
            complexd gp = kernel_ft_at(ks, h);
            complexd gm = kernel_ft_at(ks, -h);
            ddg0_ = (gp - 2.0 * g0_ + gm) / (h * h);
            break;
        }
        default:
            break; // R-a and every periodic case: no singular window
    }
}

complexd MultiplierEvaluator::direct_quotient(double p) const {
    const auto& spectrum = ks_->base.spectrum();
    // nearest grid value (p is expected on-grid for this diagnostic)
    long mode = std::lround(p / domain_->dp());
    complexd g = spectrum[domain_->spectral_index(mode)];
    return g / symbol(p);
}

complexd MultiplierEvaluator::at_index(std::size_t idx) const {
    const double p = domain_->frequency(idx);
    const complexd g = ks_->base.spectrum()[idx];
    for (const auto& w : windows_) {
        if (std::abs(p - w.center) < w.half_width)
            return (*this)(p); // fall back to quadrature-grade handling
    }
    complexd sym = symbol(p);
    if (std::abs(sym) == 0.0)
        throw DomainError("multiplier requested at a singular frequency p = " +
                          std::to_string(p) +
                          " outside any window (constrained modes must be "
                          "excluded upstream)");
    return g / sym;
}

complexd MultiplierEvaluator::operator()(double p) const {
    const double center_tol = 1e-13 * std::max(1.0, std::abs(p));
    for (const auto& w : windows_) {
        if (std::abs(p - w.center) >= w.half_width) continue;
        const bool at_center = std::abs(p - w.center) <= center_tol;
        switch (tag_) {
            case CaseTag::RLineB: {
                if (at_center) return dg0_ / complexd(0.0, -b_);
                // symbol factors as p (p - i b)
                complexd g = kernel_ft_at(*ks_, p);
                return (g - g0_) / (p * complexd(p, -b_));
            }
            case CaseTag::RLineC: {
                const double ra = w.center;
                const complexd gs = ra > 0.0 ? g_sqa_p_ : g_sqa_m_;
                const complexd dgs = ra > 0.0 ? dg_sqa_p_ : dg_sqa_m_;
                if (at_center) return dgs / (2.0 * ra);
                complexd g = kernel_ft_at(*ks_, p);
                return (g - gs) / (p * p - a_);
            }
            case CaseTag::RLineD: {
                if (at_center) return ddg0_ / 2.0;
                complexd g = kernel_ft_at(*ks_, p);
                return (g - g0_ - p * dg0_) / (p * p);
            }
            default:
                break;
        }
    }
    complexd sym = symbol(p);
    if (std::abs(sym) == 0.0)
        throw DomainError("multiplier requested at a singular frequency p = " +
                          std::to_string(p) + " with no applicable window");
    // grid frequencies read the stored spectrum; anything off-grid needs the
    // quadrature-grade transform
    const double grid_p = p / domain_->dp();
    const long nearest = std::lround(grid_p);
    const bool on_grid =
        std::abs(grid_p - static_cast<double>(nearest)) < 1e-9 &&
        nearest >= domain_->mode_number(0) &&
        nearest <= domain_->mode_number(domain_->num_spectral() - 1);
    complexd g = on_grid
                     ? ks_->base.spectrum()[domain_->spectral_index(nearest)]
                     : kernel_ft_at(*ks_, p);
    return g / sym;
}

MultiplierEvaluator build_multiplier(const EquationSpec& eq,
                                     const DomainSpec& domain,
                                     const KernelSpectrum& ks) {
    CaseTag tag = classify_equation(eq, domain);
    auto report = check_orthogonality(ks, tag, eq);
    if (!report.all_pass())
        throw SolvabilityViolation(
            "equation " + std::to_string(eq.index) + " (case " + to_string(tag) +
            "): failing orthogonality conditions: " + join(report.failing()));
    return MultiplierEvaluator(eq, tag, ks);
}

complexd eval_multiplier(const EquationSpec& eq, const DomainSpec& domain,
                         const KernelSpectrum& ks, double p) {
    return build_multiplier(eq, domain, ks)(p);
}

namespace {

double bound_candidate(double p, complexd m) {
    return std::max(std::abs(m), p * p * std::abs(m));
}

} // namespace

ContractionCertificate compute_bounds(const ProblemSpec& problem,
                                      const std::vector<KernelSpectrum>& spectra) {
    if (spectra.size() != problem.size())
        throw GridMismatch("compute_bounds: spectra count != equations");
    const auto constraints = build_constraints(problem);
    ContractionCertificate cert;
    cert.grid_resolution = problem.domain.is_real_line()
                               ? problem.domain.grid_points()
                               : problem.domain.mode_cutoff();
    for (std::size_t k = 0; k < problem.size(); ++k) {
        const auto& eq = problem.equations[k];
        auto ev = build_multiplier(eq, problem.domain, spectra[k]);
        double bound = 0.0;
        for (std::size_t i = 0; i < problem.domain.num_spectral(); ++i) {
            long mode = problem.domain.mode_number(i);
            if (constraints.constrained(k, mode)) continue;
            double p = problem.domain.frequency(i);
            bound = std::max(bound, bound_candidate(p, ev.at_index(i)));
        }
        // the window centers are legitimate sup candidates on the real line
        for (const auto& w : ev.windows())
            bound = std::max(bound, bound_candidate(w.center, ev(w.center)));
        if (!std::isfinite(bound))
            throw NonFiniteValue("multiplier bound for equation " +
                                 std::to_string(eq.index));
        cert.per_equation.push_back(bound);
        cert.drift.push_back(eq.b.has_value());
    }
    cert.N_ab = 0.0;
    cert.M_a = 0.0;
    for (std::size_t k = 0; k < cert.per_equation.size(); ++k) {
        if (cert.drift[k]) cert.N_ab = std::max(cert.N_ab, cert.per_equation[k]);
        else cert.M_a = std::max(cert.M_a, cert.per_equation[k]);
    }
    cert.Q = std::max(cert.N_ab, cert.M_a);
    return cert;
}

ContractionCertificate contraction_certificate(ContractionCertificate bounds,
                                               double L) {
    if (L < 0.0) throw DomainError("Lipschitz constant must be >= 0");
    bounds.L = L;
    bounds.factor = 2.0 * std::sqrt(kPi) * bounds.Q * L;
    bounds.pass = bounds.factor < 1.0;
    bounds.status = bounds.factor <= 0.95
                        ? CertificateStatus::Certified
                        : (bounds.factor < 1.0
                               ? CertificateStatus::UncertifiedConvergent
                               : CertificateStatus::Failed);
    return bounds;
}

MultiplierTable compute_multiplier_table(const ProblemSpec& problem,
                                         const std::vector<KernelSpectrum>& spectra,
                                         const ConstraintSet& constraints) {
    if (spectra.size() != problem.size())
        throw GridMismatch("compute_multiplier_table: spectra count != equations");
    MultiplierTable table;
    for (std::size_t k = 0; k < problem.size(); ++k) {
        auto ev = build_multiplier(problem.equations[k], problem.domain,
                                   spectra[k]);
        std::vector<complexd> row(problem.domain.num_spectral());
        for (std::size_t i = 0; i < row.size(); ++i) {
            long mode = problem.domain.mode_number(i);
            row[i] = constraints.constrained(k, mode) ? complexd(0.0, 0.0)
                                                      : ev.at_index(i);
        }
        table.values.push_back(std::move(row));
        table.windows.push_back(ev.windows());
    }
    return table;
}

} // namespace idsolve
