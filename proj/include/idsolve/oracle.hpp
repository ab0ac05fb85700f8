#pragma once

#include <string>
#include <utility>
#include <vector>

#include "idsolve/field.hpp"
#include "idsolve/problem.hpp"

namespace idsolve {

// Physical-space residual of the original system, computed without the
// spectral pipeline: 4th-order centered differences for u'' and u', and an
// O(M^2) composite Simpson convolution.
struct ResidualReport {
    std::vector<double> l2;  // per equation, interior grid points
    std::vector<double> sup; // per equation
    double total_l2 = 0.0;
    std::string order_note;
    bool truncation_warning = false;
};

// r_k(x) = u_k'' + b_k u_k' + a_k u_k + int G_k(x-y) F_k(u(y), y) dy.
// GridTooCoarse when the 4th-order stencil has fewer than 9 points.
ResidualReport residual_physical(const VectorField& u, const ProblemSpec& problem);

// O(M^2) composite Simpson convolution; periodic indices wrap, real-line
// kernel arguments outside the box contribute zero (truncation mirrors the
// solver's box).
std::vector<double> direct_convolution(const std::vector<double>& G,
                                       const std::vector<double>& f,
                                       const DomainSpec& domain);

// Composite Simpson audit of the periodic fast path:
// (1/sqrt(2pi)) int_0^{2pi} G e^{-inx} dx for n in [n_lo, n_hi].
std::vector<complexd> riemann_coefficients(const std::vector<double>& G,
                                           const DomainSpec& domain, long n_lo,
                                           long n_hi);

// The periodic test fixture: a=0, b=1, G = cos x, F = (cos y + sin y)/pi
// (u-independent); the exact solution is cos x.
std::pair<ProblemSpec, VectorField> manufactured_case();

} // namespace idsolve
