#include "idsolve/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idsolve/errors.hpp"

namespace idsolve {

void EquationSpec::validate() const {
    if (!(a >= 0.0)) throw DomainError("equation " + std::to_string(index) +
                                       ": a must be >= 0");
    if (b && *b == 0.0)
        throw DomainError("equation " + std::to_string(index) +
                          ": drift coefficient b, when present, must be nonzero");
    if (resonant_mode) {
        if (b) throw DomainError("equation " + std::to_string(index) +
                                 ": resonant_mode requires no drift term");
        if (*resonant_mode < 1)
            throw DomainError("equation " + std::to_string(index) +
                              ": resonant_mode must be a positive integer");
        double nk = static_cast<double>(*resonant_mode);
        if (a != nk * nk)
            throw DomainError("equation " + std::to_string(index) +
                              ": resonant_mode n_k declared but a != n_k^2 exactly");
    }
}

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::RLineA: return "R-a";
        case CaseTag::RLineB: return "R-b";
        case CaseTag::RLineC: return "R-c";
        case CaseTag::RLineD: return "R-d";
        case CaseTag::PeriodicA: return "I-a";
        case CaseTag::PeriodicB: return "I-b";
        case CaseTag::PeriodicC: return "I-c";
        case CaseTag::PeriodicD: return "I-d";
        case CaseTag::PeriodicE: return "I-e";
    }
    return "?";
}

CaseTag classify_equation(const EquationSpec& eq, const DomainSpec& domain) {
    eq.validate();
    if (domain.is_real_line()) {
        if (eq.b) return eq.a > 0.0 ? CaseTag::RLineA : CaseTag::RLineB;
        return eq.a > 0.0 ? CaseTag::RLineC : CaseTag::RLineD;
    }
    if (eq.b) return eq.a > 0.0 ? CaseTag::PeriodicA : CaseTag::PeriodicB;
    if (eq.a == 0.0) return CaseTag::PeriodicE;
    if (eq.resonant_mode) return CaseTag::PeriodicD;
    // distinguish non-resonant from resonant-but-undeclared
    double r = std::sqrt(eq.a);
    long nr = std::lround(r);
    if (nr >= 1) {
        double n2 = static_cast<double>(nr) * static_cast<double>(nr);
        if (eq.a == n2) return CaseTag::PeriodicD;
        if (std::abs(eq.a - n2) <= 1e-9 * std::max(1.0, n2))
            throw AmbiguousCase("equation " + std::to_string(eq.index) + ": a = " +
                                std::to_string(eq.a) + " is within 1e-9 of " +
                                std::to_string(nr) + "^2; declare resonant_mode "
                                "explicitly or move a away from the integer square");
    }
    return CaseTag::PeriodicC;
}

namespace {

int case_rank(CaseTag t) {
    switch (t) {
        case CaseTag::RLineA: return 0;
        case CaseTag::RLineB: return 1;
        case CaseTag::RLineC: return 2;
        case CaseTag::RLineD: return 3;
        case CaseTag::PeriodicA: return 0;
        case CaseTag::PeriodicB: return 1;
        case CaseTag::PeriodicC: return 2;
        case CaseTag::PeriodicD: return 3;
        case CaseTag::PeriodicE: return 4;
    }
    return -1;
}

} // namespace

ValidationReport validate_problem(const ProblemSpec& spec, bool strict) {
    ValidationReport report;
    auto note = [&](const std::string& s) { report.violations.push_back(s); };

    const std::size_t N = spec.equations.size();
    if (N == 0) {
        note("system has no equations");
        return report;
    }
    if (spec.kernels.size() != N)
        note("kernel count " + std::to_string(spec.kernels.size()) +
             " != equation count " + std::to_string(N));
    if (spec.nonlinearity.components() != N)
        note("nonlinearity component count " +
             std::to_string(spec.nonlinearity.components()) +
             " != equation count " + std::to_string(N));

    std::vector<CaseTag> tags;
    for (const auto& eq : spec.equations) {
        try {
            tags.push_back(classify_equation(eq, spec.domain));
        } catch (const Error& e) {
            note(e.what());
        }
    }
    if (!strict || tags.size() != N) return report;

    const std::size_t K = static_cast<std::size_t>(
        std::count_if(spec.equations.begin(), spec.equations.end(),
                      [](const EquationSpec& e) { return e.b.has_value(); }));
    const bool periodic = spec.domain.is_periodic();
    const std::size_t min_N = periodic ? 5 : 4;
    const std::size_t min_nodrift = periodic ? 3 : 2;
    if (N < min_N)
        note("strict mode: N >= " + std::to_string(min_N) + " violated (N = " +
             std::to_string(N) + ")");
    if (K < 2)
        note("strict mode: K >= 2 violated (K = " + std::to_string(K) + ")");
    if (N - K < min_nodrift)
        note("strict mode: N - K >= " + std::to_string(min_nodrift) +
             " violated (N - K = " + std::to_string(N - K) + ")");

    const int n_cases = periodic ? 5 : 4;
    std::vector<int> counts(static_cast<std::size_t>(n_cases), 0);
    for (auto t : tags) counts[static_cast<std::size_t>(case_rank(t))]++;
    for (int c = 0; c < n_cases; ++c)
        if (counts[static_cast<std::size_t>(c)] == 0)
            note("strict mode: no equation in case " +
                 to_string(periodic ? static_cast<CaseTag>(
                                          static_cast<int>(CaseTag::PeriodicA) + c)
                                    : static_cast<CaseTag>(c)));
    for (std::size_t i = 1; i < tags.size(); ++i)
        if (case_rank(tags[i]) < case_rank(tags[i - 1])) {
            note("strict mode: equations not ordered by case block (equation " +
                 std::to_string(i + 1) + " is " + to_string(tags[i]) +
                 " after " + to_string(tags[i - 1]) + ")");
            break;
        }
    return report;
}

ConstraintSet build_constraints(const ProblemSpec& spec) {
    ConstraintSet cs;
    cs.forced_zero_modes.resize(spec.equations.size());
    for (std::size_t k = 0; k < spec.equations.size(); ++k) {
        CaseTag tag = classify_equation(spec.equations[k], spec.domain);
        if (tag == CaseTag::PeriodicB || tag == CaseTag::PeriodicE) {
            cs.forced_zero_modes[k].insert(0);
        } else if (tag == CaseTag::PeriodicD) {
            long nk = spec.equations[k].resonant_mode
                          ? *spec.equations[k].resonant_mode
                          : std::lround(std::sqrt(spec.equations[k].a));
            cs.forced_zero_modes[k].insert(nk);
            cs.forced_zero_modes[k].insert(-nk);
        }
    }
    return cs;
}

} // namespace idsolve
