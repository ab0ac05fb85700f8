#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "idsolve/bounds.hpp"
#include "idsolve/field.hpp"
#include "idsolve/kernel.hpp"
#include "idsolve/problem.hpp"

namespace idsolve {

// Everything the solve pipeline derives once from a ProblemSpec: case tags,
// constraints, kernel spectra with the tag-required special values,
// orthogonality verdicts, the multiplier table, and the certificate.
struct PreparedProblem {
    ProblemSpec spec;
    ValidationReport validation;
    std::vector<CaseTag> tags;
    ConstraintSet constraints;
    std::vector<KernelSpectrum> spectra;
    std::vector<OrthogonalityReport> orthogonality;
    bool solvable = false; // every tag-required orthogonality condition passed
    MultiplierTable table; // populated only when solvable
    ContractionCertificate certificate;

    std::vector<std::string> failing_conditions() const;
};

struct PrepareOptions {
    bool strict_paper_mode = false;
    std::size_t lipschitz_trials = 2000; // audit budget for tabulated models
    std::uint64_t audit_seed = 1;
};

// Classify, analyze kernels, check orthogonality, build the multiplier
// table and certificate.  Orthogonality failures are recorded (solvable =
// false), not thrown; mandatory audits (tabulated nonlinearity) run here.
PreparedProblem prepare(const ProblemSpec& spec, const PrepareOptions& opts = {});

struct StepRecord {
    std::size_t step = 0;
    double increment_h2 = 0.0;
    std::optional<double> ratio;
    std::optional<double> residual_l2;
    std::optional<double> wall_ms;
};

struct IterationTrace {
    std::vector<StepRecord> steps;
};

struct NontrivialityEvidence {
    struct Overlap {
        std::size_t equation = 0; // 1-based
        double frequency = 0.0;
        double magnitude = 0.0;
    };
    bool flag = false;
    double measure = 0.0;           // real line: dp * #{overlapping grid freqs}
    std::vector<Overlap> top;       // strongest overlaps, at most 5
};

struct Solution {
    VectorField fixed_point;
    IterationTrace trace;
    ContractionCertificate certificate;
    bool nontrivial = false;
    NontrivialityEvidence evidence;
    double apriori_bound = 0.0; // delta_1 * factor^m / (1 - factor)
    std::size_t iterations = 0;
    bool converged = false;
};

// One application of the auxiliary map: u^_k = sqrt(2pi) m_k f^_k with
// f_k = F_k(v(x), x); constrained modes are zeroed after checking the
// forcing coefficient there is consistent with orthogonality.
VectorField apply_map(const VectorField& v, const PreparedProblem& prepared);

struct PicardOptions {
    double tol = 1e-10;
    std::size_t max_iter = 200;
    std::size_t residual_cadence = 5; // 0 disables residual sampling
    bool override_certificate = false;
    bool certified_mode = false; // true: require factor <= 0.95, not just < 1
    bool reference_mode = true;  // deterministic output: no wall-clock times
};

// Picard iteration v^{m+1} = apply_map(v^m) until the H2 increment falls
// below tol.  Throws SolvabilityViolation / CertificateFailed /
// NoConvergence; `trace_out`, when given, receives the partial trace even
// if the iteration throws.
Solution picard_solve(const PreparedProblem& prepared, const VectorField& v0,
                      const PicardOptions& opts = {},
                      IterationTrace* trace_out = nullptr);

// Max of ||T v1 - T v2|| / ||v1 - v2|| over seeded random band-limited
// pairs; ContractionViolation when it exceeds factor * (1 + 1e-6) + 1e-10.
double empirical_contraction(const PreparedProblem& prepared,
                             std::size_t pairs, std::uint64_t seed);

// Random band-limited real field on the domain (used by uniqueness probes
// and the contraction audit; deterministic for a fixed seed).
VectorField random_band_limited(const DomainSpec& domain, std::size_t components,
                                std::uint64_t seed, double scale = 1.0);

// Spectral-support overlap of G_k and F_k(0, .): nonzero measure <=> the
// fixed point is not the zero function.
NontrivialityEvidence nontriviality_check(const PreparedProblem& prepared);

} // namespace idsolve
