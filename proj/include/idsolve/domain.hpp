#pragma once

#include <cstddef>
#include <vector>

#include "idsolve/errors.hpp"

namespace idsolve {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2Pi = 2.5066282746310005024157652848110452530;

enum class DomainVariant { RealLine, PeriodicInterval };

// RealLine: uniform grid on [-X, X), M points, frequency grid p_j = j*pi/X
// with j = -M/2 .. M/2-1.  PeriodicInterval: I = [0, 2*pi) (hard-coded
// period), retained modes n = -N_max .. N_max, physical grid of
// next_pow2(max(4*N_max+2, 64)) points so products of retained modes stay
// alias-free within the cutoff.
class DomainSpec {
public:
    static DomainSpec real_line(double half_width, std::size_t grid_points) {
        if (!(half_width > 0.0))
            throw DomainError("real line requires X > 0");
        if (grid_points < 16 || grid_points % 2 != 0)
            throw DomainError("real line requires M >= 16 and even");
        DomainSpec d;
        d.variant_ = DomainVariant::RealLine;
        d.X_ = half_width;
        d.M_ = grid_points;
        return d;
    }

    static DomainSpec periodic(std::size_t mode_cutoff) {
        if (mode_cutoff < 8)
            throw DomainError("periodic interval requires N_max >= 8");
        DomainSpec d;
        d.variant_ = DomainVariant::PeriodicInterval;
        d.N_max_ = mode_cutoff;
        std::size_t need = 4 * mode_cutoff + 2;
        if (need < 64) need = 64;
        std::size_t m = 64;
        while (m < need) m *= 2;
        d.M_ = m;
        return d;
    }

    DomainVariant variant() const { return variant_; }
    bool is_real_line() const { return variant_ == DomainVariant::RealLine; }
    bool is_periodic() const { return variant_ == DomainVariant::PeriodicInterval; }

    double half_width() const { return X_; }
    std::size_t grid_points() const { return M_; }
    std::size_t mode_cutoff() const { return N_max_; }

    std::size_t num_physical() const { return M_; }
    std::size_t num_spectral() const {
        return is_real_line() ? M_ : 2 * N_max_ + 1;
    }

    // physical grid spacing
    double dx() const {
        return is_real_line() ? 2.0 * X_ / static_cast<double>(M_)
                              : 2.0 * kPi / static_cast<double>(M_);
    }
    // frequency spacing (real line); on I the modes are the integers
    double dp() const { return is_real_line() ? kPi / X_ : 1.0; }

    double physical_point(std::size_t i) const {
        return is_real_line() ? -X_ + dx() * static_cast<double>(i)
                              : dx() * static_cast<double>(i);
    }

    // spectral index -> frequency; real line: j in [-M/2, M/2), p = j*pi/X;
    // periodic: n in [-N_max, N_max]
    double frequency(std::size_t idx) const {
        return static_cast<double>(mode_number(idx)) * dp();
    }
    long mode_number(std::size_t idx) const {
        return is_real_line()
                   ? static_cast<long>(idx) - static_cast<long>(M_) / 2
                   : static_cast<long>(idx) - static_cast<long>(N_max_);
    }
    // inverse of mode_number
    std::size_t spectral_index(long mode) const {
        return is_real_line()
                   ? static_cast<std::size_t>(mode + static_cast<long>(M_) / 2)
                   : static_cast<std::size_t>(mode + static_cast<long>(N_max_));
    }

    std::vector<double> physical_points() const {
        std::vector<double> xs(num_physical());
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = physical_point(i);
        return xs;
    }
    std::vector<double> frequencies() const {
        std::vector<double> ps(num_spectral());
        for (std::size_t i = 0; i < ps.size(); ++i) ps[i] = frequency(i);
        return ps;
    }

    bool operator==(const DomainSpec& o) const {
        return variant_ == o.variant_ && X_ == o.X_ && M_ == o.M_ &&
               N_max_ == o.N_max_;
    }
    bool operator!=(const DomainSpec& o) const { return !(*this == o); }

private:
    DomainSpec() = default;
    DomainVariant variant_ = DomainVariant::RealLine;
    double X_ = 0.0;
    std::size_t M_ = 0;      // physical grid size (both variants)
    std::size_t N_max_ = 0;  // periodic only
};

} // namespace idsolve
