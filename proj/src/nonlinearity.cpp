#include "idsolve/nonlinearity.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

#include "idsolve/errors.hpp"

namespace idsolve {

double ComponentFn::eval(double x) const {
    if (fn) return fn(x);
    return profile(x);
}

std::vector<double> ComponentFn::sample(const DomainSpec& domain) const {
    if (fn) {
        std::vector<double> out(domain.num_physical());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = fn(domain.physical_point(i));
        return out;
    }
    return profile.sample(domain);
}

double spectral_norm(const std::vector<std::vector<double>>& A) {
    if (A.empty()) return 0.0;
    const std::size_t n = A.size();
    const std::size_t m = A.front().size();
    Eigen::MatrixXd M(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < n; ++i) {
        if (A[i].size() != m) throw GridMismatch("ragged matrix");
        for (std::size_t j = 0; j < m; ++j)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = A[i][j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    return svd.singularValues()(0);
}

namespace {

double euclid(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void check_square(const std::vector<std::vector<double>>& A, std::size_t n) {
    if (A.size() != n) throw GridMismatch("matrix row count != N");
    for (const auto& row : A)
        if (row.size() != n) throw GridMismatch("matrix column count != N");
}

} // namespace

NonlinearityModel NonlinearityModel::affine(std::vector<std::vector<double>> A,
                                            std::vector<ComponentFn> g,
                                            std::optional<double> declared_K,
                                            std::optional<ComponentFn> h) {
    NonlinearityModel m;
    m.family_ = NonlinFamily::Affine;
    m.N_ = g.size();
    if (m.N_ == 0) throw GridMismatch("affine model needs >= 1 component");
    check_square(A, m.N_);
    m.A_ = std::move(A);
    m.g_ = std::move(g);
    // type invariant: for affine models declared_L IS the spectral norm of A
    m.declared_L_ = spectral_norm(m.A_);
    m.declared_K_ = declared_K.value_or(m.declared_L_);
    m.h_ = std::move(h);
    return m;
}

NonlinearityModel NonlinearityModel::saturating(
    std::vector<double> sigma, std::vector<std::vector<double>> c,
    std::vector<ComponentFn> g, std::optional<double> declared_L,
    std::optional<double> declared_K, std::optional<ComponentFn> h) {
    NonlinearityModel m;
    m.family_ = NonlinFamily::Saturating;
    m.N_ = g.size();
    if (m.N_ == 0) throw GridMismatch("saturating model needs >= 1 component");
    if (sigma.size() != m.N_) throw GridMismatch("sigma size != N");
    check_square(c, m.N_);
    m.sigma_ = std::move(sigma);
    m.c_ = std::move(c);
    m.g_ = std::move(g);
    std::vector<std::vector<double>> S(m.N_, std::vector<double>(m.N_));
    for (std::size_t k = 0; k < m.N_; ++k)
        for (std::size_t j = 0; j < m.N_; ++j)
            S[k][j] = m.sigma_[k] * m.c_[k][j];
    const double trueL = spectral_norm(S);
    m.declared_L_ = declared_L.value_or(trueL);
    m.declared_K_ = declared_K.value_or(trueL);
    m.h_ = std::move(h);
    return m;
}

NonlinearityModel NonlinearityModel::tabulated(
    std::vector<std::vector<double>> samples, double declared_L,
    double declared_K) {
    NonlinearityModel m;
    m.family_ = NonlinFamily::Tabulated;
    m.N_ = samples.size();
    if (m.N_ == 0) throw GridMismatch("tabulated model needs >= 1 component");
    m.table_ = std::move(samples);
    m.declared_L_ = declared_L;
    m.declared_K_ = declared_K;
    return m;
}

std::vector<double> NonlinearityModel::eval_point(const std::vector<double>& u,
                                                  const DomainSpec& domain,
                                                  std::size_t grid_index) const {
    if (u.size() != N_) throw GridMismatch("state vector size != N");
    std::vector<double> out(N_, 0.0);
    switch (family_) {
        case NonlinFamily::Affine: {
            const double x = domain.physical_point(grid_index);
            for (std::size_t k = 0; k < N_; ++k) {
                double acc = g_[k].fn || g_[k].profile.analytic()
                                 ? g_[k].eval(x)
                                 : g_[k].profile.values.at(grid_index);
                for (std::size_t j = 0; j < N_; ++j) acc += A_[k][j] * u[j];
                out[k] = acc;
            }
            break;
        }
        case NonlinFamily::Saturating: {
            const double x = domain.physical_point(grid_index);
            for (std::size_t k = 0; k < N_; ++k) {
                double dot = 0.0;
                for (std::size_t j = 0; j < N_; ++j) dot += c_[k][j] * u[j];
                double base = g_[k].fn || g_[k].profile.analytic()
                                  ? g_[k].eval(x)
                                  : g_[k].profile.values.at(grid_index);
                out[k] = sigma_[k] * std::tanh(dot) + base;
            }
            break;
        }
        case NonlinFamily::Tabulated:
            for (std::size_t k = 0; k < N_; ++k)
                out[k] = table_[k].at(grid_index);
            break;
    }
    for (double v : out)
        if (!std::isfinite(v)) throw NonFiniteValue("eval_F produced a non-finite value");
    return out;
}

std::vector<double> NonlinearityModel::eval_at(const std::vector<double>& u,
                                               double x) const {
    if (u.size() != N_) throw GridMismatch("state vector size != N");
    std::vector<double> out(N_, 0.0);
    switch (family_) {
        case NonlinFamily::Affine:
            for (std::size_t k = 0; k < N_; ++k) {
                if (!g_[k].evaluable())
                    throw DomainError("tabulated forcing not evaluable off-grid");
                double acc = g_[k].eval(x);
                for (std::size_t j = 0; j < N_; ++j) acc += A_[k][j] * u[j];
                out[k] = acc;
            }
            break;
        case NonlinFamily::Saturating:
            for (std::size_t k = 0; k < N_; ++k) {
                if (!g_[k].evaluable())
                    throw DomainError("tabulated forcing not evaluable off-grid");
                double dot = 0.0;
                for (std::size_t j = 0; j < N_; ++j) dot += c_[k][j] * u[j];
                out[k] = sigma_[k] * std::tanh(dot) + g_[k].eval(x);
            }
            break;
        case NonlinFamily::Tabulated:
            throw DomainError("tabulated model not evaluable off-grid");
    }
    return out;
}

std::vector<double> NonlinearityModel::sample_h(const DomainSpec& domain) const {
    if (h_) {
        auto hs = h_->sample(domain);
        for (double v : hs)
            if (v < 0.0) throw DomainError("growth majorant h(x) must be nonnegative");
        return hs;
    }
    // default h(x) = |g(x)|_euclidean (for tabulated: |samples(x)|)
    const std::size_t M = domain.num_physical();
    std::vector<double> hs(M, 0.0);
    if (family_ == NonlinFamily::Tabulated) {
        for (std::size_t i = 0; i < M; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < N_; ++k) s += table_[k][i] * table_[k][i];
            hs[i] = std::sqrt(s);
        }
        return hs;
    }
    std::vector<std::vector<double>> gs(N_);
    for (std::size_t k = 0; k < N_; ++k) gs[k] = g_[k].sample(domain);
    for (std::size_t i = 0; i < M; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < N_; ++k) s += gs[k][i] * gs[k][i];
        hs[i] = std::sqrt(s);
    }
    return hs;
}

VectorField eval_F(const NonlinearityModel& model, const VectorField& v) {
    if (v.size() != model.components())
        throw GridMismatch("eval_F: field components != model components");
    const DomainSpec& dom = v.domain();
    const std::size_t M = dom.num_physical();
    std::vector<std::vector<double>> out(model.components(),
                                         std::vector<double>(M));
    std::vector<double> u(model.components());
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t k = 0; k < v.size(); ++k) u[k] = v[k].physical()[i];
        auto f = model.eval_point(u, dom, i);
        for (std::size_t k = 0; k < f.size(); ++k) out[k][i] = f[k];
    }
    std::vector<SpectralField> comps;
    comps.reserve(out.size());
    for (auto& samples : out)
        comps.push_back(SpectralField::from_physical(dom, std::move(samples)));
    return VectorField(std::move(comps));
}

namespace {

std::vector<double> random_ball_point(std::mt19937_64& rng, std::size_t n,
                                      double radius) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> v(n);
    double norm2 = 0.0;
    for (auto& x : v) {
        x = gauss(rng);
        norm2 += x * x;
    }
    double norm = std::sqrt(norm2);
    if (norm == 0.0) return std::vector<double>(n, 0.0);
    // uniform in the ball: radius * U^{1/n} along a uniform direction
    double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(n));
    for (auto& x : v) x *= r / norm;
    return v;
}

std::string witness_string(const std::vector<double>& u1,
                           const std::vector<double>& u2, double ratio) {
    std::ostringstream os;
    os << "ratio " << ratio << " at u1=(";
    for (std::size_t i = 0; i < u1.size(); ++i)
        os << (i ? "," : "") << u1[i];
    os << "), u2=(";
    for (std::size_t i = 0; i < u2.size(); ++i)
        os << (i ? "," : "") << u2[i];
    os << ")";
    return os.str();
}

} // namespace

LipschitzAudit verify_lipschitz(const NonlinearityModel& model,
                                const DomainSpec& domain, std::size_t trials,
                                std::uint64_t seed, double radius) {
    if (trials < 1) throw DomainError("verify_lipschitz requires trials >= 1");
    const std::size_t N = model.components();
    const std::size_t M = domain.num_physical();
    double worst = 0.0;
    std::vector<double> wu1, wu2;

    auto consider = [&](const std::vector<double>& u1,
                        const std::vector<double>& u2, std::size_t gi) {
        double den2 = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            double d = u1[j] - u2[j];
            den2 += d * d;
        }
        if (den2 < 1e-28) return;
        auto f1 = model.eval_point(u1, domain, gi);
        auto f2 = model.eval_point(u2, domain, gi);
        double num2 = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            double d = f1[j] - f2[j];
            num2 += d * d;
        }
        double ratio = std::sqrt(num2 / den2);
        if (ratio > worst) {
            worst = ratio;
            wu1 = u1;
            wu2 = u2;
        }
    };

    // deterministic probes: along each coordinate axis and along each
    // saturating row direction, straddling u = 0 where tanh is steepest
    const double eps = 1e-3;
    std::vector<std::vector<double>> directions;
    for (std::size_t j = 0; j < N; ++j) {
        std::vector<double> e(N, 0.0);
        e[j] = 1.0;
        directions.push_back(e);
    }
    if (model.family() == NonlinFamily::Saturating) {
        for (const auto& crow : model.couplings()) {
            double norm = euclid(crow);
            if (norm < 1e-300) continue;
            std::vector<double> row(N);
            for (std::size_t j = 0; j < N; ++j) row[j] = crow[j] / norm;
            directions.push_back(row);
        }
    }
    for (const auto& d : directions) {
        std::vector<double> u1(N), u2(N);
        for (std::size_t j = 0; j < N; ++j) {
            u1[j] = eps * d[j];
            u2[j] = -eps * d[j];
        }
        consider(u1, u2, 0);
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, M - 1);
    for (std::size_t t = 0; t < trials; ++t) {
        auto u1 = random_ball_point(rng, N, radius);
        auto u2 = random_ball_point(rng, N, radius);
        consider(u1, u2, pick(rng));
    }

    LipschitzAudit audit{worst, worst <= model.declared_L() * (1.0 + 1e-6)};
    if (!audit.pass)
        throw LipschitzViolation("declared L = " + std::to_string(model.declared_L()) +
                                 " exceeded: " + witness_string(wu1, wu2, worst));
    return audit;
}

GrowthAudit verify_growth(const NonlinearityModel& model,
                          const DomainSpec& domain, std::size_t trials,
                          std::uint64_t seed, double radius) {
    if (trials < 1) throw DomainError("verify_growth requires trials >= 1");
    const std::size_t N = model.components();
    const std::size_t M = domain.num_physical();
    const auto h = model.sample_h(domain);
    const double K = model.declared_K();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, M - 1);
    double worst = -1e300;
    for (std::size_t t = 0; t < trials; ++t) {
        auto u = random_ball_point(rng, N, radius);
        std::size_t gi = pick(rng);
        auto f = model.eval_point(u, domain, gi);
        double lhs = euclid(f);
        double rhs = K * euclid(u) + h[gi];
        double slack = 1e-12 * (1.0 + std::abs(rhs));
        worst = std::max(worst, lhs - rhs);
        if (lhs > rhs + slack)
            throw GrowthViolation("‖F(u,x)‖ = " + std::to_string(lhs) +
                                  " > K‖u‖ + h(x) = " + std::to_string(rhs) +
                                  " at grid index " + std::to_string(gi));
    }

    if (domain.is_periodic()) {
        // endpoint equality F_k(u, 0) = F_k(u, 2pi); the u-dependent part is
        // x-independent in every family, so this checks the forcing g / table
        for (std::size_t t = 0; t < 8; ++t) {
            auto u = random_ball_point(rng, N, radius);
            std::vector<double> f0, f2pi;
            if (model.family() == NonlinFamily::Tabulated) {
                f0 = model.eval_point(u, domain, 0);
                f2pi = f0; // grid wraps: x = 2pi is the x = 0 sample
            } else {
                bool evaluable = true;
                for (const auto& g : model.forcing())
                    evaluable = evaluable && g.evaluable();
                if (!evaluable) {
                    f0 = model.eval_point(u, domain, 0);
                    f2pi = f0;
                } else {
                    f0 = model.eval_at(u, 0.0);
                    f2pi = model.eval_at(u, 2.0 * kPi);
                }
            }
            for (std::size_t k = 0; k < N; ++k) {
                double scale = 1.0 + std::abs(f0[k]);
                if (std::abs(f0[k] - f2pi[k]) > 1e-10 * scale)
                    throw PeriodicityViolation(
                        "component " + std::to_string(k + 1) + ": F(u,0) = " +
                        std::to_string(f0[k]) + " vs F(u,2pi) = " +
                        std::to_string(f2pi[k]));
            }
        }
    }
    return GrowthAudit{worst, true};
}

} // namespace idsolve
