#include "idsolve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idsolve/errors.hpp"
#include "idsolve/nonlinearity.hpp"
#include "idsolve/quadrature.hpp"

namespace idsolve {

std::vector<double> direct_convolution(const std::vector<double>& G,
                                       const std::vector<double>& f,
                                       const DomainSpec& domain) {
    const std::size_t M = domain.num_physical();
    if (G.size() != M || f.size() != M)
        throw GridMismatch("direct_convolution sample counts");
    const double h = domain.dx();

    // Simpson weights over nodes 0..M with the wrap sample f_M := f_0
    std::vector<double> wf(M + 1);
    for (std::size_t m = 0; m <= M; ++m) {
        double w = (m == 0 || m == M) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
        wf[m] = (h / 3.0) * w * f[m % M];
    }

    std::vector<double> out(M, 0.0);
    const long Ml = static_cast<long>(M);
    if (domain.is_periodic()) {
        for (long i = 0; i < Ml; ++i) {
            double acc = 0.0;
            for (long m = 0; m <= Ml; ++m)
                acc += wf[static_cast<std::size_t>(m)] *
                       G[static_cast<std::size_t>(((i - m) % Ml + Ml) % Ml)];
            out[static_cast<std::size_t>(i)] = acc;
        }
    } else {
        // kernel argument x_i - y_m = (i - m) * h - offset alignment: both
        // grids share the box, so index i - m + M/2 addresses G(x_i - y_m);
        // outside [0, M) the kernel is truncated to zero
        for (long i = 0; i < Ml; ++i) {
            double acc = 0.0;
            const long base = i + Ml / 2;
            const long m_lo = std::max<long>(0, base - (Ml - 1));
            const long m_hi = std::min<long>(Ml, base);
            for (long m = m_lo; m <= m_hi; ++m)
                acc += wf[static_cast<std::size_t>(m)] *
                       G[static_cast<std::size_t>(base - m)];
            out[static_cast<std::size_t>(i)] = acc;
        }
    }
    return out;
}

std::vector<complexd> riemann_coefficients(const std::vector<double>& G,
                                           const DomainSpec& domain, long n_lo,
                                           long n_hi) {
    if (!domain.is_periodic())
        throw DomainError("riemann_coefficients is a periodic-interval audit");
    if (G.size() != domain.num_physical())
        throw GridMismatch("riemann_coefficients sample count");
    if (n_hi < n_lo) throw DomainError("riemann_coefficients empty mode range");
    const std::size_t M = G.size();
    const complexd mi(0.0, -1.0);
    std::vector<complexd> out;
    out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    std::vector<complexd> integrand(M);
    for (long n = n_lo; n <= n_hi; ++n) {
        for (std::size_t m = 0; m < M; ++m) {
            double x = domain.physical_point(m);
            integrand[m] = G[m] * std::exp(mi * static_cast<double>(n) * x);
        }
        out.push_back(simpson_wrap(integrand, domain.dx()) / kSqrt2Pi);
    }
    return out;
}

ResidualReport residual_physical(const VectorField& u, const ProblemSpec& problem) {
    const DomainSpec& dom = problem.domain;
    if (u.size() != problem.size() || u.domain() != dom)
        throw GridMismatch("residual_physical: field does not match the problem");
    const std::size_t M = dom.num_physical();
    if (M < 9)
        throw GridTooCoarse("4th-order stencils need at least 9 grid points");
    const double h = dom.dx();

    ResidualReport report;
    report.order_note = "4th-order centered differences; composite Simpson "
                        "convolution";

    // F(u(y), y) on the grid, all components at once
    VectorField Fu = eval_F(problem.nonlinearity, u);

    // interior points: everything on I (wrap is exact); the real line drops
    // the stencil radius at each box edge
    const std::size_t lo = dom.is_periodic() ? 0 : 2;
    const std::size_t hi = dom.is_periodic() ? M : M - 2;

    double total_sq = 0.0;
    for (std::size_t k = 0; k < problem.size(); ++k) {
        const auto& uk = u[k].physical();
        const auto Gk = problem.kernels[k].sample(dom);
        const auto conv = direct_convolution(Gk, Fu[k].physical(), dom);
        const double a = problem.equations[k].a;
        const double b = problem.equations[k].b.value_or(0.0);

        auto at = [&](long i) {
            return uk[static_cast<std::size_t>(((i % (long)M) + (long)M) % (long)M)];
        };
        double sq = 0.0, sup = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            long il = static_cast<long>(i);
            double d1 = (at(il - 2) - 8.0 * at(il - 1) + 8.0 * at(il + 1) -
                         at(il + 2)) /
                        (12.0 * h);
            double d2 = (-at(il - 2) + 16.0 * at(il - 1) - 30.0 * at(il) +
                         16.0 * at(il + 1) - at(il + 2)) /
                        (12.0 * h * h);
            double r = d2 + b * d1 + a * uk[i] + conv[i];
            sq += r * r;
            sup = std::max(sup, std::abs(r));
        }
        report.l2.push_back(std::sqrt(sq * h));
        report.sup.push_back(sup);
        total_sq += sq * h;
        report.truncation_warning =
            report.truncation_warning || u[k].truncation_warning();
    }
    report.total_l2 = std::sqrt(total_sq);
    return report;
}

std::pair<ProblemSpec, VectorField> manufactured_case() {
    DomainSpec dom = DomainSpec::periodic(64);
    EquationSpec eq;
    eq.index = 1;
    eq.a = 0.0;
    eq.b = 1.0;
    // F(u, y) = (cos y + sin y)/pi = (sqrt(2)/pi) cos(y - pi/4), u-independent
    auto model = NonlinearityModel::affine(
        {{0.0}},
        {ComponentFn::of(Profile::cosine(std::sqrt(2.0) / kPi, 1, kPi / 4.0))});
    ProblemSpec spec{dom, {eq}, {Profile::cosine(1.0, 1, 0.0)}, model};

    std::vector<double> expected(dom.num_physical());
    for (std::size_t i = 0; i < expected.size(); ++i)
        expected[i] = std::cos(dom.physical_point(i));
    VectorField exact(
        std::vector<SpectralField>{SpectralField::from_physical(dom, expected)});
    return {std::move(spec), std::move(exact)};
}

} // namespace idsolve
