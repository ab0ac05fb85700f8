#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "idsolve/field.hpp"
#include "idsolve/profiles.hpp"

namespace idsolve {

enum class NonlinFamily { Affine, Saturating, Tabulated };

// A scalar function of x used for forcing terms: a Profile from the config
// families, optionally overridden by an arbitrary callable (tests need
// functions like g(x) = x that no config family expresses).
struct ComponentFn {
    Profile profile;
    std::function<double(double)> fn; // wins over profile when set

    static ComponentFn of(Profile p) { return ComponentFn{std::move(p), nullptr}; }
    static ComponentFn of(std::function<double(double)> f) {
        return ComponentFn{Profile::zero(), std::move(f)};
    }

    bool evaluable() const { return fn || profile.analytic(); }
    double eval(double x) const;
    std::vector<double> sample(const DomainSpec& domain) const;
};

// F = (F_1, ..., F_N), Caratheodory in (u, x), with declared global
// Lipschitz constant L (Euclidean norms in u) and growth certificate
// |F(u,x)| <= K|u| + h(x).  Families:
//   affine:     F(u,x) = A u + g(x)                  (L = ||A||_2, exact)
//   saturating: F_k(u,x) = sigma_k tanh(<c_k,u>) + g_k(x)  (L = ||diag(sigma) C||_2)
//   tabulated:  u-independent forcing samples        (L = 0)
class NonlinearityModel {
public:
    static NonlinearityModel affine(std::vector<std::vector<double>> A,
                                    std::vector<ComponentFn> g,
                                    std::optional<double> declared_K = {},
                                    std::optional<ComponentFn> h = {});
    static NonlinearityModel saturating(std::vector<double> sigma,
                                        std::vector<std::vector<double>> c,
                                        std::vector<ComponentFn> g,
                                        std::optional<double> declared_L = {},
                                        std::optional<double> declared_K = {},
                                        std::optional<ComponentFn> h = {});
    static NonlinearityModel tabulated(std::vector<std::vector<double>> samples,
                                       double declared_L, double declared_K);

    NonlinFamily family() const { return family_; }
    std::size_t components() const { return N_; }
    double declared_L() const { return declared_L_; }
    double declared_K() const { return declared_K_; }
    bool mandatory_audit() const { return family_ == NonlinFamily::Tabulated; }

    // F(u, x) for one state vector; x given as a grid index
    std::vector<double> eval_point(const std::vector<double>& u,
                                   const DomainSpec& domain,
                                   std::size_t grid_index) const;
    // same but at an arbitrary x (requires evaluable forcing components)
    std::vector<double> eval_at(const std::vector<double>& u, double x) const;

    // growth majorant h(x) on the grid (defaults to |g(x)|_euclidean)
    std::vector<double> sample_h(const DomainSpec& domain) const;

    const std::vector<std::vector<double>>& matrix() const { return A_; }
    const std::vector<double>& sigmas() const { return sigma_; }
    const std::vector<std::vector<double>>& couplings() const { return c_; }
    const std::vector<ComponentFn>& forcing() const { return g_; }

private:
    NonlinearityModel() = default;
    NonlinFamily family_ = NonlinFamily::Affine;
    std::size_t N_ = 0;
    std::vector<std::vector<double>> A_;     // affine
    std::vector<double> sigma_;              // saturating
    std::vector<std::vector<double>> c_;     // saturating
    std::vector<ComponentFn> g_;             // affine/saturating forcing
    std::vector<std::vector<double>> table_; // tabulated samples [k][i]
    double declared_L_ = 0.0;
    double declared_K_ = 0.0;
    std::optional<ComponentFn> h_;
};

// Physical samples of x -> F(v(x), x); fed to forward_transform by the solver.
VectorField eval_F(const NonlinearityModel& model, const VectorField& v);

struct LipschitzAudit {
    double empirical_L; // max observed ratio
    bool pass;          // empirical_L <= declared_L * (1 + 1e-6)
};
// Deterministic directional probes plus `trials` seeded random pairs in a
// ball of radius `radius`; throws LipschitzViolation with the witnessing
// pair when the declared constant is exceeded.
LipschitzAudit verify_lipschitz(const NonlinearityModel& model,
                                const DomainSpec& domain, std::size_t trials,
                                std::uint64_t seed, double radius = 10.0);

struct GrowthAudit {
    double worst_margin; // max over samples of |F| - (K|u| + h)
    bool pass;
};
// Samples |F(u,x)| <= declared_K |u| + h(x) and, on I, the endpoint equality
// F_k(u, 0) = F_k(u, 2pi); throws GrowthViolation / PeriodicityViolation.
GrowthAudit verify_growth(const NonlinearityModel& model,
                          const DomainSpec& domain, std::size_t trials,
                          std::uint64_t seed, double radius = 10.0);

// spectral norm (largest singular value); exposed for tests
double spectral_norm(const std::vector<std::vector<double>>& A);

} // namespace idsolve
