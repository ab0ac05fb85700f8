#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "idsolve/domain.hpp"
#include "idsolve/nonlinearity.hpp"
#include "idsolve/profiles.hpp"

namespace idsolve {

// One equation's constants: -u'' is represented through the symbol
// p^2 - a - i b p; b absent means no drift term; resonant_mode n_k marks the
// periodic resonant case a = n_k^2 explicitly.
struct EquationSpec {
    int index = 1; // 1-based
    double a = 0.0;
    std::optional<double> b;
    std::optional<int> resonant_mode;

    // throws DomainError when a type invariant is broken
    void validate() const;
};

// Real-line cases: a>0 with drift, a=0 with drift, a>0 no drift, a=0 no
// drift.  Periodic cases: with drift (a>0 / a=0), no drift non-resonant,
// resonant a=n_k^2, and a=0.
enum class CaseTag {
    RLineA, RLineB, RLineC, RLineD,
    PeriodicA, PeriodicB, PeriodicC, PeriodicD, PeriodicE
};

std::string to_string(CaseTag tag);

// The unique applicable tag; AmbiguousCase when a is within 1e-9 of n^2 but
// not exactly equal and resonance was not declared.
CaseTag classify_equation(const EquationSpec& eq, const DomainSpec& domain);

struct ProblemSpec {
    DomainSpec domain;
    std::vector<EquationSpec> equations;
    std::vector<Profile> kernels; // G_k, parallel to equations
    NonlinearityModel nonlinearity;

    std::size_t size() const { return equations.size(); }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};

// General mode checks per-equation invariants and shape consistency only;
// strict mode additionally reproduces the theorems' hypotheses: N >= 4 on R
// (N >= 5 on I), K >= 2 drift equations, both groups nonempty, every case
// class represented, equations ordered by case block.
ValidationReport validate_problem(const ProblemSpec& spec, bool strict);

// Fourier modes forced to zero per equation: {0} for periodic a=0 cases,
// {+n_k, -n_k} for the resonant case, empty otherwise (and always on R).
struct ConstraintSet {
    std::vector<std::set<long>> forced_zero_modes;

    bool constrained(std::size_t eq_index, long mode) const {
        return forced_zero_modes[eq_index].count(mode) > 0;
    }
};

ConstraintSet build_constraints(const ProblemSpec& spec);

} // namespace idsolve
