#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "idsolve/kernel.hpp"
#include "idsolve/problem.hpp"

namespace idsolve {

struct SingularWindow {
    double center = 0.0;
    double half_width = 0.0;
};

// Singularity-safe evaluator for m_k(p) = G^_k(p) / symbol(p), symbol =
// p^2 - a - i b p (drift) or p^2 - a.  Inside a window the certified-zero
// special values are subtracted so the quotient stays removable; at the
// exact center the analytic limit is returned.
class MultiplierEvaluator {
public:
    MultiplierEvaluator(const EquationSpec& eq, CaseTag tag,
                        const KernelSpectrum& ks);

    complexd operator()(double p) const;
    complexd at_index(std::size_t spectral_index) const;

    const std::vector<SingularWindow>& windows() const { return windows_; }
    CaseTag tag() const { return tag_; }

    // direct quotient without subtraction (diagnostics / property tests)
    complexd direct_quotient(double p) const;

private:
    complexd symbol(double p) const { return complexd(p * p - a_, -b_ * p); }

    const KernelSpectrum* ks_;
    const DomainSpec* domain_;
    CaseTag tag_;
    double a_ = 0.0;
    double b_ = 0.0;
    std::vector<SingularWindow> windows_;
    complexd g0_{0.0, 0.0};      // G^(0)
    complexd dg0_{0.0, 0.0};     // G^'(0)
    complexd ddg0_{0.0, 0.0};    // G^''(0) (centered differencing, step delta/8)
    complexd g_sqa_p_{0.0, 0.0}; // G^(+sqrt a)
    complexd g_sqa_m_{0.0, 0.0}; // G^(-sqrt a)
    complexd dg_sqa_p_{0.0, 0.0};
    complexd dg_sqa_m_{0.0, 0.0};
};

// Verifies the orthogonality conditions the tag requires, then builds the
// evaluator.  SolvabilityViolation when a required condition fails.
// The evaluator aliases ks, which must outlive it; hence no rvalues.
MultiplierEvaluator build_multiplier(const EquationSpec& eq,
                                     const DomainSpec& domain,
                                     const KernelSpectrum& ks);
MultiplierEvaluator build_multiplier(const EquationSpec&, const DomainSpec&,
                                     KernelSpectrum&&) = delete;

// One-shot form of the above (the common entry point in tests).
complexd eval_multiplier(const EquationSpec& eq, const DomainSpec& domain,
                         const KernelSpectrum& ks, double p);

struct MultiplierTable {
    // values[k][i] = m_k at spectral index i; constrained modes hold 0
    std::vector<std::vector<complexd>> values;
    std::vector<std::vector<SingularWindow>> windows;
};

enum class CertificateStatus { Certified, UncertifiedConvergent, Failed };

struct ContractionCertificate {
    std::vector<double> per_equation; // N_{a,b,k} for drift eqs, M_{a,k} otherwise
    std::vector<bool> drift;
    double N_ab = 0.0; // max over the drift group (0 when empty)
    double M_a = 0.0;  // max over the no-drift group (0 when empty)
    double Q = 0.0;
    double L = 0.0;
    double factor = 0.0; // 2 sqrt(pi) Q L
    bool pass = false;   // factor < 1
    CertificateStatus status = CertificateStatus::Failed;
    std::size_t grid_resolution = 0; // M (real line) or N_max (periodic)
};

// Per-equation grid maxima of max(|m|, |p^2 m|) (window centers included as
// evaluation points, constrained modes skipped), group maxima and Q.
// SolvabilityViolation propagated from build_multiplier.
ContractionCertificate compute_bounds(const ProblemSpec& problem,
                                      const std::vector<KernelSpectrum>& spectra);

// Fills L, factor = 2 sqrt(pi) Q L, pass, status (factor <= 0.95 certified,
// < 1 uncertified-convergent, else failed).
ContractionCertificate contraction_certificate(ContractionCertificate bounds,
                                               double L);

// Grid multiplier values for the solver / spectrum export.
MultiplierTable compute_multiplier_table(const ProblemSpec& problem,
                                         const std::vector<KernelSpectrum>& spectra,
                                         const ConstraintSet& constraints);

} // namespace idsolve
