#include "doctest.h"

#include <cmath>

#include "idsolve/bounds.hpp"
#include "support.hpp"

using namespace idsolve;

namespace {

EquationSpec eq_of(int index, double a, std::optional<double> b = {},
                   std::optional<int> nk = {}) {
    EquationSpec e;
    e.index = index;
    e.a = a;
    e.b = b;
    e.resonant_mode = nk;
    return e;
}

const DomainSpec kLine = DomainSpec::real_line(16.0, 1024);
const DomainSpec kInterval = DomainSpec::periodic(64);

std::vector<double> sample_fn(const DomainSpec& d,
                              const std::function<double(double)>& f) {
    std::vector<double> out(d.num_physical());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(d.physical_point(i));
    return out;
}

// G^(p) = p^2 e^{-p^2/2}: both (or13) conditions hold
KernelSpectrum mexican_hat(const DomainSpec& d) {
    auto samples = sample_fn(
        d, [](double x) { return (1.0 - x * x) * std::exp(-0.5 * x * x); });
    return spectral_profile(Profile::tabulated(samples), d, {0.0});
}

// G^(p) = (p^2 - 1) e^{-p^2/2}: vanishes at the a=1 symbol zeros
KernelSpectrum shifted_hat(const DomainSpec& d) {
    auto samples = sample_fn(
        d, [](double x) { return -x * x * std::exp(-0.5 * x * x); });
    return spectral_profile(Profile::tabulated(samples), d, {1.0, -1.0});
}

ProblemSpec one_eq_problem(const DomainSpec& d, EquationSpec eq, Profile kernel,
                           double coupling) {
    std::vector<ComponentFn> g = {ComponentFn::of(Profile::zero())};
    auto model = NonlinearityModel::affine({{coupling}}, std::move(g));
    return ProblemSpec{d, {eq}, {std::move(kernel)}, std::move(model)};
}

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("regular multiplier values are plain quotients") {
    auto ks = spectral_profile(Profile::gaussian(), kLine, {});
    // symbol at p=0 is -a
    CHECK(std::abs(eval_multiplier(eq_of(1, 1.0, 1.0), kLine, ks, 0.0) -
                   complexd{-1.0, 0.0}) <= 1e-9);
    double p = 2.0 * kLine.dp();
    auto m = eval_multiplier(eq_of(1, 1.0, 1.0), kLine, ks, p);
    auto expected = std::exp(-0.5 * p * p) / complexd(p * p - 1.0, -p);
    CHECK(std::abs(m - expected) <= 1e-9);
}

TEST_CASE("R-b limit at the origin uses the certified derivative") {
    auto odd = spectral_profile(Profile::odd_gaussian(), kLine, {0.0});
    auto eq = eq_of(1, 0.0, 1.0);
    // G^'(0) = -i, so the limit is (-i)/(-i b) = 1
    auto m0 = eval_multiplier(eq, kLine, odd, 0.0);
    CHECK(std::abs(m0 - complexd{1.0, 0.0}) <= 1e-7);
    // approaching the center reproduces the limit
    auto near = eval_multiplier(eq, kLine, odd, 1e-4);
    CHECK(std::abs(near - m0) <= 1e-4);
}

TEST_CASE("R-c and R-d centers use the analytic limits") {
    auto sh = shifted_hat(kLine);
    auto rc = build_multiplier(eq_of(1, 1.0), kLine, sh);
    // G^'(p) at p=1 equals 2 e^{-1/2}; the limit is G^'(1)/2.  G^ and the
    // symbol are both even, so the -1 center carries the same value.
    CHECK(std::abs(rc(1.0) - std::exp(-0.5)) <= 1e-7);
    CHECK(std::abs(rc(-1.0) - std::exp(-0.5)) <= 1e-7);

    auto mh = mexican_hat(kLine);
    auto rd = build_multiplier(eq_of(1, 0.0), kLine, mh);
    // exact G^''(0)/2 = 1; the prescribed centered difference at step
    // delta/8 carries its O(h^2) error, about 0.8% here
    CHECK(std::abs(rd(0.0) - 1.0) <= 0.01);
}

TEST_CASE("failing orthogonality blocks multiplier evaluation") {
    auto even = spectral_profile(Profile::gaussian(), kLine, {0.0});
    CHECK_THROWS_AS(eval_multiplier(eq_of(1, 0.0, 1.0), kLine, even, 0.5),
                    SolvabilityViolation);
    auto odd = spectral_profile(Profile::odd_gaussian(), kLine, {0.0});
    CHECK_NOTHROW(eval_multiplier(eq_of(1, 0.0, 1.0), kLine, odd, 0.5));
    // R-d wants the dipole moment too, which the odd kernel lacks
    CHECK_THROWS_AS(eval_multiplier(eq_of(1, 0.0), kLine, odd, 0.5),
                    SolvabilityViolation);
}

TEST_CASE("subtraction agrees with the direct quotient inside windows") {
    auto odd = spectral_profile(Profile::odd_gaussian(), kLine, {0.0});
    auto sh = shifted_hat(kLine);
    auto mh = mexican_hat(kLine);
    auto rb = build_multiplier(eq_of(1, 0.0, 1.0), kLine, odd);
    auto rc = build_multiplier(eq_of(1, 1.0), kLine, sh);
    auto rd = build_multiplier(eq_of(1, 0.0), kLine, mh);

    auto check_agreement = [&](const MultiplierEvaluator& ev, double p) {
        auto sub = ev(p);
        auto direct = ev.direct_quotient(p);
        CHECK(std::abs(sub - direct) <= 1e-7 * std::max(1.0, std::abs(direct)));
    };
    // on-grid frequencies strictly inside each window, away from the center
    for (long j : {3L, 4L}) {
        double p = static_cast<double>(j) * kLine.dp();
        check_agreement(rb, p);
        check_agreement(rd, p);
    }
    for (long j : {4L, 6L}) { // p ~ 0.785, 1.178 around the center +1
        double p = static_cast<double>(j) * kLine.dp();
        check_agreement(rc, p);
    }
}

TEST_CASE("window geometry follows the case table") {
    auto odd = spectral_profile(Profile::odd_gaussian(), kLine, {0.0});
    auto rb = build_multiplier(eq_of(1, 0.0, 1.0), kLine, odd);
    REQUIRE(rb.windows().size() == 1);
    CHECK(rb.windows()[0].center == 0.0);
    CHECK(rb.windows()[0].half_width == 1.0);

    auto sh = shifted_hat(kLine);
    auto rc = build_multiplier(eq_of(1, 1.0), kLine, sh);
    REQUIRE(rc.windows().size() == 2);
    CHECK(rc.windows()[0].center == 1.0);
    CHECK(rc.windows()[0].half_width == doctest::Approx(0.5)); // min(sqrt(a)/2, 1)
    CHECK(rc.windows()[0].half_width < std::sqrt(1.0));
    CHECK(rc.windows()[1].center == -1.0);

    // no windows off the real line or for R-a
    auto gauss = spectral_profile(Profile::gaussian(), kLine, {});
    auto ra = build_multiplier(eq_of(1, 1.0, 1.0), kLine, gauss);
    CHECK(ra.windows().empty());
}

TEST_CASE("the per-equation bound reproduces the dense-search value") {
    auto problem = one_eq_problem(DomainSpec::real_line(16.0, 512),
                                  eq_of(1, 1.0, 1.0), Profile::gaussian(), 0.0);
    auto spectra = {spectral_profile(Profile::gaussian(),
                                     problem.domain, {})};
    auto cert = compute_bounds(problem, std::vector<KernelSpectrum>(spectra));
    REQUIRE(cert.per_equation.size() == 1);
    // dense-search oracle value: 1.000, attained at p = 0
    CHECK(std::abs(cert.per_equation[0] - 1.0) <= 0.005);
    CHECK(cert.drift[0]);
    CHECK(cert.N_ab == cert.per_equation[0]);
    CHECK(cert.M_a == 0.0);
    CHECK(cert.Q == cert.N_ab);
    CHECK(cert.grid_resolution == 512);
}

TEST_CASE("bounds are stable under grid refinement") {
    double vals[2];
    std::size_t idx = 0;
    for (std::size_t M : {std::size_t{512}, std::size_t{1024}}) {
        auto d = DomainSpec::real_line(16.0, M);
        auto problem =
            one_eq_problem(d, eq_of(1, 1.0, 1.0), Profile::gaussian(), 0.0);
        auto cert = compute_bounds(
            problem, {spectral_profile(Profile::gaussian(), d, {})});
        vals[idx++] = cert.per_equation[0];
    }
    CHECK(std::abs(vals[1] - vals[0]) / vals[0] < 0.01);
}

TEST_CASE("the periodic cosine bound is the two-mode enumeration value") {
    auto problem = one_eq_problem(kInterval, eq_of(1, 0.0, 1.0),
                                  Profile::cosine(), 0.0);
    auto cert = compute_bounds(
        problem, {spectral_profile(Profile::cosine(), kInterval, {})});
    // only n = +-1 contribute: sqrt(pi/2)/sqrt(2)
    const double expected = std::sqrt(kPi / 2.0) / std::sqrt(2.0);
    CHECK(cert.per_equation[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(cert.grid_resolution == 64);
}

TEST_CASE("bounds scale exactly with the kernel") {
    const double alpha = 3.7;
    auto base = compute_bounds(
        one_eq_problem(kLine, eq_of(1, 1.0, 1.0), Profile::gaussian(), 0.0),
        {spectral_profile(Profile::gaussian(), kLine, {})});
    auto scaled = compute_bounds(
        one_eq_problem(kLine, eq_of(1, 1.0, 1.0), Profile::gaussian(alpha), 0.0),
        {spectral_profile(Profile::gaussian(alpha), kLine, {})});
    CHECK(scaled.per_equation[0] ==
          doctest::Approx(alpha * base.per_equation[0]).epsilon(1e-12));
    CHECK(scaled.Q == doctest::Approx(alpha * base.Q).epsilon(1e-12));
}

TEST_CASE("zero kernel gives a zero bound") {
    auto cert = compute_bounds(
        one_eq_problem(kLine, eq_of(1, 1.0, 1.0), Profile::zero(), 0.0),
        {spectral_profile(Profile::zero(), kLine, {})});
    CHECK(cert.per_equation[0] == 0.0);
    CHECK(cert.Q == 0.0);
}

TEST_CASE("drift term stays bounded by the L1 mass") {
    auto gauss = spectral_profile(Profile::gaussian(), kLine, {});
    auto ra = build_multiplier(eq_of(1, 1.0, 1.0), kLine, gauss);
    auto odd = spectral_profile(Profile::odd_gaussian(), kLine, {0.0});
    auto rb = build_multiplier(eq_of(1, 0.0, 1.0), kLine, odd);
    struct Pair {
        const MultiplierEvaluator* ev;
        const KernelSpectrum* ks;
    };
    for (auto [ev, ks] : {Pair{&ra, &gauss}, Pair{&rb, &odd}}) {
        for (std::size_t i = 0; i < kLine.num_spectral(); ++i) {
            double p = kLine.frequency(i);
            double lhs = std::abs(p * ev->at_index(i) * 1.0); // b = 1
            CHECK(lhs <= ks->m0 / kSqrt2Pi * (1.0 + 1e-10));
        }
    }
}

TEST_CASE("certificate arithmetic and status thresholds") {
    ContractionCertificate bounds;
    bounds.per_equation = {0.886};
    bounds.drift = {true};
    bounds.N_ab = bounds.Q = 0.886;

    auto pass = contraction_certificate(bounds, 0.2);
    CHECK(pass.factor == doctest::Approx(0.628).epsilon(1e-3));
    CHECK(pass.pass);
    CHECK(pass.status == CertificateStatus::Certified);

    bounds.N_ab = bounds.Q = 1.0;
    bounds.per_equation = {1.0};
    auto fail = contraction_certificate(bounds, 0.3);
    CHECK(fail.factor == doctest::Approx(1.063).epsilon(1e-3));
    CHECK(!fail.pass);
    CHECK(fail.status == CertificateStatus::Failed);

    auto marginal = contraction_certificate(bounds, 0.27);
    CHECK(marginal.pass);
    CHECK(marginal.status == CertificateStatus::UncertifiedConvergent);

    auto free = contraction_certificate(bounds, 0.0);
    CHECK(free.factor == 0.0);
    CHECK(free.pass);
    CHECK(free.status == CertificateStatus::Certified);
}

TEST_CASE("multiplier table zeroes the constrained modes") {
    // resonant at n=1 with a kernel that has no +-1 coefficients
    auto ks = spectral_profile(Profile::cosine(1.0, 3), kInterval, {});
    auto problem = one_eq_problem(kInterval, eq_of(1, 1.0, {}, 1),
                                  Profile::cosine(1.0, 3), 0.0);
    auto constraints = build_constraints(problem);
    auto table = compute_multiplier_table(problem, {ks}, constraints);
    REQUIRE(table.values.size() == 1);
    CHECK(table.values[0][kInterval.spectral_index(1)] == complexd{0.0, 0.0});
    CHECK(table.values[0][kInterval.spectral_index(-1)] == complexd{0.0, 0.0});
    // the n = +-3 entries carry the kernel coefficient over the symbol
    auto m3 = table.values[0][kInterval.spectral_index(3)];
    CHECK(std::abs(m3 - std::sqrt(kPi / 2.0) / complexd(8.0, 0.0)) <= 1e-12);

    // unconstrained access to the singular mode is refused
    auto ev = build_multiplier(eq_of(1, 1.0, {}, 1), kInterval, ks);
    CHECK_THROWS_AS(ev.at_index(kInterval.spectral_index(1)), DomainError);
}

} // TEST_SUITE
