#include "idsolve/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "idsolve/errors.hpp"
#include "idsolve/oracle.hpp"

namespace idsolve {

std::vector<std::string> PreparedProblem::failing_conditions() const {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < orthogonality.size(); ++k)
        for (const auto& name : orthogonality[k].failing())
            out.push_back("equation " + std::to_string(k + 1) + ": " + name);
    return out;
}

namespace {

std::vector<double> special_points_for(CaseTag tag, const EquationSpec& eq) {
    switch (tag) {
        case CaseTag::RLineB:
        case CaseTag::RLineD:
            return {0.0};
        case CaseTag::RLineC: {
            double ra = std::sqrt(eq.a);
            return {ra, -ra};
        }
        default:
            return {};
    }
}

} // namespace

PreparedProblem prepare(const ProblemSpec& spec, const PrepareOptions& opts) {
    PreparedProblem prep{spec, validate_problem(spec, opts.strict_paper_mode),
                         {}, {}, {}, {}, false, {}, {}};
    if (!prep.validation.pass()) return prep;

    for (const auto& eq : spec.equations)
        prep.tags.push_back(classify_equation(eq, spec.domain));
    prep.constraints = build_constraints(spec);

    prep.spectra.reserve(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k)
        prep.spectra.push_back(spectral_profile(
            spec.kernels[k], spec.domain,
            special_points_for(prep.tags[k], spec.equations[k])));

    prep.solvable = true;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        prep.orthogonality.push_back(check_orthogonality(
            prep.spectra[k], prep.tags[k], spec.equations[k]));
        prep.solvable = prep.solvable && prep.orthogonality.back().all_pass();
    }

    // tabulated nonlinearity models carry user-declared constants and a
    // mandatory audit
    if (spec.nonlinearity.mandatory_audit()) {
        verify_lipschitz(spec.nonlinearity, spec.domain, opts.lipschitz_trials,
                         opts.audit_seed);
        verify_growth(spec.nonlinearity, spec.domain, opts.lipschitz_trials,
                      opts.audit_seed);
    }

    if (prep.solvable) {
        prep.table = compute_multiplier_table(spec, prep.spectra, prep.constraints);
        prep.certificate = contraction_certificate(
            compute_bounds(spec, prep.spectra), spec.nonlinearity.declared_L());
    }
    return prep;
}

VectorField apply_map(const VectorField& v, const PreparedProblem& prepared) {
    const auto& spec = prepared.spec;
    if (!prepared.solvable)
        throw SolvabilityViolation(
            "apply_map requires all orthogonality conditions to hold; failing: " +
            [&] {
                std::string s;
                for (const auto& f : prepared.failing_conditions())
                    s += (s.empty() ? "" : ", ") + f;
                return s;
            }());
    if (v.size() != spec.size() || v.domain() != spec.domain)
        throw GridMismatch("apply_map: field does not match the problem grid");

    VectorField Fv = eval_F(spec.nonlinearity, v);
    std::vector<SpectralField> out;
    out.reserve(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const auto& fhat = Fv[k].spectrum();
        const auto& mk = prepared.table.values[k];
        std::vector<complexd> uhat(fhat.size());
        for (std::size_t i = 0; i < fhat.size(); ++i) {
            long mode = spec.domain.mode_number(i);
            if (prepared.constraints.constrained(k, mode)) {
                // the projection is consistent only if orthogonality already
                // annihilated the forcing coefficient at this mode
                const complexd ghat =
                    prepared.spectra[k].base.spectrum()[i];
                const double coeff = kSqrt2Pi * std::abs(ghat) * std::abs(fhat[i]);
                const double scale = prepared.spectra[k].sup_bound *
                                     [&] {
                                         double s = 0.0;
                                         for (const auto& z : fhat)
                                             s = std::max(s, std::abs(z));
                                         return s;
                                     }();
                if (coeff > kOrthTolerance * std::max(scale, 1e-300) * kSqrt2Pi)
                    throw ConstraintInconsistency(
                        "equation " + std::to_string(k + 1) + ", mode " +
                        std::to_string(mode) + ": forcing coefficient " +
                        std::to_string(coeff) +
                        " on a constrained mode exceeds tolerance");
                uhat[i] = complexd(0.0, 0.0);
                continue;
            }
            uhat[i] = kSqrt2Pi * mk[i] * fhat[i];
        }
        out.push_back(SpectralField::from_spectrum(spec.domain, std::move(uhat)));
    }
    return VectorField(std::move(out));
}

Solution picard_solve(const PreparedProblem& prepared, const VectorField& v0,
                      const PicardOptions& opts, IterationTrace* trace_out) {
    if (!prepared.solvable)
        throw SolvabilityViolation(
            "picard_solve: orthogonality conditions failed; run `check` for "
            "the per-condition report");
    const auto& cert = prepared.certificate;
    if (!opts.override_certificate) {
        if (!cert.pass)
            throw CertificateFailed("contraction factor " +
                                    std::to_string(cert.factor) + " >= 1");
        if (opts.certified_mode && cert.status != CertificateStatus::Certified)
            throw CertificateFailed(
                "certified mode requires factor <= 0.95, got " +
                std::to_string(cert.factor) +
                " (uncertified-convergent; rerun without certified mode to "
                "accept it)");
    }

    Solution sol{v0, {}, cert, false, {}, 0.0, 0, false};
    IterationTrace& trace = trace_out ? *trace_out : sol.trace;
    trace.steps.clear();

    VectorField v = v0;
    double prev_delta = 0.0;
    double delta1 = 0.0;
    using clock = std::chrono::steady_clock;
    for (std::size_t m = 1; m <= opts.max_iter; ++m) {
        auto t0 = clock::now();
        VectorField u = apply_map(v, prepared);
        double delta = h2_norm_difference(u, v);
        StepRecord rec;
        rec.step = m;
        rec.increment_h2 = delta;
        if (m >= 2 && prev_delta > 0.0) rec.ratio = delta / prev_delta;
        if (m == 1) delta1 = delta;
        bool converged = delta <= opts.tol;
        if (opts.residual_cadence > 0 &&
            (m % opts.residual_cadence == 0 || converged)) {
            auto rr = residual_physical(u, prepared.spec);
            rec.residual_l2 = rr.total_l2;
        }
        if (!opts.reference_mode) {
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              clock::now() - t0)
                              .count();
        }
        trace.steps.push_back(rec);
        prev_delta = delta;
        v = u;
        sol.iterations = m;
        if (converged) {
            sol.converged = true;
            break;
        }
    }
    if (!sol.converged)
        throw NoConvergence("max_iter = " + std::to_string(opts.max_iter) +
                            " reached with increment " +
                            std::to_string(prev_delta) + " > tol " +
                            std::to_string(opts.tol));

    sol.fixed_point = v;
    if (cert.factor > 0.0 && cert.factor < 1.0)
        sol.apriori_bound = delta1 *
                            std::pow(cert.factor,
                                     static_cast<double>(sol.iterations)) /
                            (1.0 - cert.factor);
    if (trace_out) sol.trace = *trace_out;
    auto ev = nontriviality_check(prepared);
    sol.nontrivial = ev.flag;
    sol.evidence = std::move(ev);
    return sol;
}

VectorField random_band_limited(const DomainSpec& domain, std::size_t components,
                                std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const long j_max = domain.is_real_line()
                           ? std::max<long>(2, static_cast<long>(
                                                   domain.grid_points()) / 16)
                           : std::max<long>(2, std::min<long>(
                                                   8, static_cast<long>(
                                                          domain.mode_cutoff())));
    std::vector<SpectralField> comps;
    comps.reserve(components);
    for (std::size_t k = 0; k < components; ++k) {
        std::vector<complexd> sp(domain.num_spectral(), complexd(0.0, 0.0));
        for (long j = 1; j <= j_max; ++j) {
            double envelope =
                std::exp(-static_cast<double>(j * j) /
                         (2.0 * static_cast<double>(j_max) / 2.0 *
                          static_cast<double>(j_max) / 2.0));
            complexd z(gauss(rng), gauss(rng));
            z *= envelope * scale;
            sp[domain.spectral_index(j)] = z;
            sp[domain.spectral_index(-j)] = std::conj(z);
        }
        sp[domain.spectral_index(0)] = complexd(gauss(rng) * scale, 0.0);
        comps.push_back(SpectralField::from_spectrum(domain, std::move(sp)));
    }
    return VectorField(std::move(comps));
}

double empirical_contraction(const PreparedProblem& prepared, std::size_t pairs,
                             std::uint64_t seed) {
    if (!prepared.solvable)
        throw SolvabilityViolation("empirical_contraction needs a solvable problem");
    const auto& cert = prepared.certificate;
    double worst = 0.0;
    for (std::size_t t = 0; t < pairs; ++t) {
        VectorField v1 = random_band_limited(prepared.spec.domain,
                                             prepared.spec.size(),
                                             seed * 1000003ULL + 2 * t);
        VectorField v2 = random_band_limited(prepared.spec.domain,
                                             prepared.spec.size(),
                                             seed * 1000003ULL + 2 * t + 1);
        double den = h2_norm_difference(v1, v2);
        if (den < 1e-14) continue; // degenerate pair
        VectorField T1 = apply_map(v1, prepared);
        VectorField T2 = apply_map(v2, prepared);
        worst = std::max(worst, h2_norm_difference(T1, T2) / den);
    }
    if (worst > cert.factor * (1.0 + 1e-6) + 1e-10)
        throw ContractionViolation("observed ratio " + std::to_string(worst) +
                                   " exceeds the certified factor " +
                                   std::to_string(cert.factor));
    return worst;
}

NontrivialityEvidence nontriviality_check(const PreparedProblem& prepared) {
    constexpr double eps_supp = 1e-10;
    const auto& spec = prepared.spec;
    NontrivialityEvidence ev;
    VectorField F0 = eval_F(spec.nonlinearity,
                            VectorField::zero(spec.domain, spec.size()));
    std::vector<NontrivialityEvidence::Overlap> all;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const auto& ghat = prepared.spectra[k].base.spectrum();
        const auto& fhat = F0[k].spectrum();
        double gsup = 0.0, fsup = 0.0;
        for (const auto& z : ghat) gsup = std::max(gsup, std::abs(z));
        for (const auto& z : fhat) fsup = std::max(fsup, std::abs(z));
        const double thresh = eps_supp * gsup * fsup;
        for (std::size_t i = 0; i < ghat.size(); ++i) {
            long mode = spec.domain.mode_number(i);
            if (prepared.constraints.constrained(k, mode)) continue;
            double overlap = std::abs(ghat[i]) * std::abs(fhat[i]);
            if (overlap > thresh && overlap > 0.0) {
                ev.measure += spec.domain.is_real_line() ? spec.domain.dp() : 1.0;
                all.push_back({k + 1, spec.domain.frequency(i), overlap});
            }
        }
    }
    ev.flag = !all.empty();
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.magnitude > b.magnitude; });
    if (all.size() > 5) all.resize(5);
    ev.top = std::move(all);
    return ev;
}

} // namespace idsolve
