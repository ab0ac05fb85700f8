#include "doctest.h"

#include <cmath>
#include <random>

#include "idsolve/field.hpp"
#include "idsolve/profiles.hpp"
#include "support.hpp"

using namespace idsolve;

namespace {

std::vector<double> sample_fn(const DomainSpec& d,
                              const std::function<double(double)>& f) {
    std::vector<double> out(d.num_physical());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(d.physical_point(i));
    return out;
}

// random trig polynomial within the mode cutoff; real by construction
std::vector<double> random_band_limited_samples(const DomainSpec& d,
                                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::size_t j_max = d.is_real_line() ? d.grid_points() / 16
                                         : std::min<std::size_t>(6, d.mode_cutoff());
    std::vector<double> amp(j_max + 1), phase(j_max + 1);
    for (std::size_t j = 0; j <= j_max; ++j) {
        amp[j] = gauss(rng) * std::exp(-0.3 * static_cast<double>(j));
        phase[j] = gauss(rng);
    }
    return sample_fn(d, [&](double x) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= j_max; ++j)
            acc += amp[j] * std::cos(static_cast<double>(j) * d.dp() * x +
                                     phase[j]);
        return acc;
    });
}

} // namespace

TEST_SUITE("fourier") {

TEST_CASE("gaussian transform matches the adaptive quadrature oracle") {
    auto d = DomainSpec::real_line(16.0, 512);
    auto spec = forward_transform(
        sample_fn(d, [](double x) { return std::exp(-0.5 * x * x); }), d);
    double worst = 0.0;
    for (std::size_t j = 0; j < d.num_spectral(); ++j) {
        double p = d.frequency(j);
        worst = std::max(worst, std::abs(spec[j] - std::exp(-0.5 * p * p)));
    }
    CHECK(worst <= 1e-9);

    // spot-check on-grid frequencies against the independent quadrature oracle
    for (long j : {0L, 8L, 40L}) {
        double p = static_cast<double>(j) * d.dp();
        auto ref = testsupport::oracle_ft(
            [](double x) { return std::exp(-0.5 * x * x); }, p, 16.0);
        CHECK(std::abs(spec[d.spectral_index(j)] - ref) <= 1e-10);
    }
}

TEST_CASE("periodic cosine has exactly the two expected coefficients") {
    auto d = DomainSpec::periodic(64);
    auto spec = forward_transform(sample_fn(d, [](double x) { return std::cos(x); }), d);
    const double target = std::sqrt(kPi / 2.0);
    for (std::size_t j = 0; j < d.num_spectral(); ++j) {
        long n = d.mode_number(j);
        if (n == 1 || n == -1) {
            CHECK(std::abs(spec[j] - target) <= 1e-12);
        } else {
            CHECK(std::abs(spec[j]) <= 1e-12);
        }
    }
}

TEST_CASE("zero maps to zero") {
    for (const auto& d :
         {DomainSpec::real_line(16.0, 64), DomainSpec::periodic(8)}) {
        auto spec = forward_transform(std::vector<double>(d.num_physical(), 0.0), d);
        for (const auto& z : spec) CHECK(std::abs(z) == 0.0);
    }
}

TEST_CASE("forward transform agrees with the literal DFT realization") {
    for (const auto& d :
         {DomainSpec::real_line(4.0, 32), DomainSpec::periodic(8)}) {
        auto f = random_band_limited_samples(d, 11);
        auto fast = forward_transform(f, d);
        auto slow = testsupport::naive_forward(f, d);
        double scale = 0.0;
        for (const auto& z : slow) scale = std::max(scale, std::abs(z));
        for (std::size_t j = 0; j < fast.size(); ++j)
            CHECK(std::abs(fast[j] - slow[j]) <= 1e-12 * std::max(1.0, scale));
    }
}

TEST_CASE("round-trip is the identity to 1e-10 on band-limited fields") {
    for (const auto& d :
         {DomainSpec::real_line(16.0, 256), DomainSpec::periodic(16)}) {
        for (std::uint64_t seed : {1, 2, 3}) {
            auto f = random_band_limited_samples(d, seed);
            auto back = inverse_transform(forward_transform(f, d), d);
            double sup = 0.0, err = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                sup = std::max(sup, std::abs(f[i]));
                err = std::max(err, std::abs(back[i] - f[i]));
            }
            CHECK(err <= 1e-10 * std::max(1.0, sup));
        }
    }
}

TEST_CASE("single coefficient pair reconstructs the cosine") {
    auto d = DomainSpec::periodic(8);
    std::vector<complexd> spec(d.num_spectral(), complexd{0.0, 0.0});
    spec[d.spectral_index(1)] = std::sqrt(kPi / 2.0);
    spec[d.spectral_index(-1)] = std::sqrt(kPi / 2.0);
    auto f = inverse_transform(spec, d);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(f[i] == doctest::Approx(std::cos(d.physical_point(i))).epsilon(1e-12));
}

TEST_CASE("real input yields a conjugate-symmetric spectrum") {
    for (const auto& d :
         {DomainSpec::real_line(8.0, 128), DomainSpec::periodic(8)}) {
        auto f = random_band_limited_samples(d, 5);
        auto spec = forward_transform(f, d);
        double scale = 0.0;
        for (const auto& z : spec) scale = std::max(scale, std::abs(z));
        for (std::size_t j = 0; j < spec.size(); ++j) {
            long n = d.mode_number(j);
            long m = -n;
            if (m < d.mode_number(0) ||
                m > d.mode_number(d.num_spectral() - 1))
                continue;
            auto mirrored = spec[d.spectral_index(m)];
            CHECK(std::abs(mirrored - std::conj(spec[j])) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("conjugate-symmetry violations are rejected on inversion") {
    auto d = DomainSpec::periodic(8);
    std::vector<complexd> spec(d.num_spectral(), complexd{0.0, 0.0});
    spec[d.spectral_index(1)] = complexd{1.0, 0.0}; // no matching -1 entry
    CHECK_THROWS_AS(inverse_transform(spec, d), NonRealResult);
}

TEST_CASE("H2 norm reproduces closed-form values") {
    auto d = DomainSpec::periodic(8);
    auto u = SpectralField::from_physical(
        d, sample_fn(d, [](double x) { return std::cos(x); }));
    CHECK(h2_norm(u) == doctest::Approx(kSqrt2Pi).epsilon(1e-12));

    CHECK(h2_norm(SpectralField::zero(d)) == 0.0);

    for (long n : {2L, 3L}) {
        auto mode = SpectralField::from_physical(
            d, sample_fn(d, [n](double x) {
                return std::cos(static_cast<double>(n) * x) / std::sqrt(kPi);
            }));
        double n4 = static_cast<double>(n * n * n * n);
        CHECK(h2_norm(mode) == doctest::Approx(std::sqrt(1.0 + n4)).epsilon(1e-12));
    }
}

TEST_CASE("H2 norm is absolutely homogeneous and subadditive") {
    auto d = DomainSpec::real_line(8.0, 128);
    auto fu = random_band_limited_samples(d, 21);
    auto fv = random_band_limited_samples(d, 22);
    auto u = SpectralField::from_physical(d, fu);
    auto v = SpectralField::from_physical(d, fv);

    const double alpha = -2.75;
    std::vector<double> scaled(fu.size());
    for (std::size_t i = 0; i < fu.size(); ++i) scaled[i] = alpha * fu[i];
    auto au = SpectralField::from_physical(d, scaled);
    CHECK(h2_norm(au) ==
          doctest::Approx(std::abs(alpha) * h2_norm(u)).epsilon(1e-12));

    std::vector<double> sum(fu.size());
    for (std::size_t i = 0; i < fu.size(); ++i) sum[i] = fu[i] + fv[i];
    auto w = SpectralField::from_physical(d, sum);
    CHECK(h2_norm(w) <= h2_norm(u) + h2_norm(v) + 1e-12);
}

TEST_CASE("Plancherel gap stays at quadrature level") {
    auto rl = DomainSpec::real_line(16.0, 512);
    auto g = SpectralField::from_physical(
        rl, sample_fn(rl, [](double x) { return std::exp(-0.5 * x * x); }));
    CHECK(plancherel_gap(g) <= 1e-9);

    auto pi = DomainSpec::periodic(64);
    auto c = SpectralField::from_physical(
        pi, sample_fn(pi, [](double x) { return std::cos(x); }));
    CHECK(plancherel_gap(c) <= 1e-12);

    CHECK(plancherel_gap(SpectralField::zero(pi)) == 0.0);
}

TEST_CASE("spectral fields stay self-consistent") {
    auto d = DomainSpec::real_line(16.0, 256);
    auto f = SpectralField::from_physical(
        d, sample_fn(d, [](double x) { return std::exp(-x * x); }));
    CHECK(f.consistency_gap() <= 1e-10);
    auto g = SpectralField::from_spectrum(d, f.spectrum());
    CHECK(g.consistency_gap() <= 1e-10);
}

TEST_CASE("box truncation is flagged when mass reaches the edge") {
    auto d = DomainSpec::real_line(16.0, 512);
    auto narrow = SpectralField::from_physical(
        d, sample_fn(d, [](double x) { return std::exp(-0.5 * x * x); }));
    CHECK(!narrow.truncation_warning());
    auto wide = SpectralField::from_physical(
        d, sample_fn(d, [](double x) { return std::exp(-0.5 * (x / 8.0) * (x / 8.0)); }));
    CHECK(wide.truncation_warning());
}

TEST_CASE("vector fields require a shared grid") {
    auto d = DomainSpec::periodic(8);
    auto e = DomainSpec::periodic(16);
    auto a = SpectralField::zero(d);
    auto b = SpectralField::zero(e);
    CHECK_THROWS_AS(VectorField({a, b}), GridMismatch);
    auto v = VectorField::zero(d, 3);
    CHECK(v.size() == 3);
    CHECK(h2_norm(v) == 0.0);
}

TEST_CASE("H2 difference reflects the perturbation scale") {
    auto d = DomainSpec::periodic(8);
    auto u = VectorField({SpectralField::from_physical(
        d, sample_fn(d, [](double x) { return std::cos(x); }))});
    auto v = VectorField({SpectralField::from_physical(
        d, sample_fn(d, [](double x) { return 1.001 * std::cos(x); }))});
    CHECK(h2_norm_difference(u, v) ==
          doctest::Approx(0.001 * kSqrt2Pi).epsilon(1e-9));
}

} // TEST_SUITE
