#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "stabledev/levy.hpp"
#include "stabledev/rng.hpp"

namespace stabledev {

// Pareto radius on (R, inf) with density alpha R^alpha r^{-1-alpha}.
double pareto_radius_from_uniform(double R, double alpha, double u);
double sample_pareto_radius(double R, double alpha, RngStream& rng);

// Picks an atom index with probability weight / total mass.
class AtomPicker {
public:
    explicit AtomPicker(const SpectralMeasure& spectral);
    std::size_t pick(RngStream& rng) const;

private:
    std::vector<double> cumulative_;
};

struct ZRDraw {
    Vec value;
    long count = 0;  // number of jumps
};

// Compound Poisson part: jumps of norm > R.
ZRDraw sample_Z_R_with_count(const StableModel& model, double R, RngStream& rng);
Vec sample_Z_R(const StableModel& model, double R, RngStream& rng);

// Scale of a totally skewed stable variable whose Levy measure is
// w r^{-1-alpha} dr on (0, inf).
double skewed_stable_scale(double weight, double alpha);

// Standard totally skewed (beta = 1) stable variable, by the trigonometric-exponential transform.
double sample_standard_skewed_stable(double alpha, RngStream& rng);

// Exact draw of X = shift + sum_j xi_j (sigma_j S_j + w_j / (alpha-1)). The
// additive constant matches the compensation of jumps of norm <= 1.
Vec sample_stable_vector(const StableModel& model, RngStream& rng);

// Variance of the small-jump mass dropped below eps_in: sb eps^{2-alpha} / (2-alpha).
double discarded_second_moment(const Law& law, double eps_in);

// Number of shell jumps above which a shell's radius sum is drawn from its
// normal approximation (exact count, exact mean and variance).
constexpr long kDefaultShellExactLimit = 256;
constexpr long kExactShells = std::numeric_limits<long>::max();

// Bounded-jump part: jumps with norm in (eps_in, R] plus the compensation
// drift of jumps of norm <= 1. Jumps are generated per geometric shell of
// ratio 2 and per atom.
class YRSampler {
public:
    YRSampler(const StableModel& model, double R, double eps_in, long shell_exact_limit = kDefaultShellExactLimit);
    Vec draw(RngStream& rng) const;

    const Vec& drift() const { return drift_; }
    double discarded_second_moment() const { return discarded_second_moment_; }
    double expected_jump_count() const;

private:
    struct Shell {
        double inner_pow;  // a^{-alpha}
        double span;       // a^{-alpha} - b^{-alpha}
        double mean_radius;
        double sd_radius;
        std::vector<double> mean_count;  // per atom
    };
    StableModel model_;
    double alpha_;
    long shell_exact_limit_;
    Vec drift_;
    double discarded_second_moment_;
    std::vector<Shell> shells_;
};

Vec sample_Y_R(const StableModel& model, double R, double eps_in, RngStream& rng,
               long shell_exact_limit = kDefaultShellExactLimit);

struct Configuration {
    std::vector<Vec> points;
    double eps_in = 0.0;
    double R = 0.0;
};

// nu({eps_in < ||u|| <= R}).
double annulus_mass(const Law& law, double eps_in, double R);

// Radius on (eps_in, R] with density proportional to r^{-1-alpha}.
double annulus_radius_from_uniform(double eps_in, double R, double alpha, double u);

// Poisson configuration restricted to the annulus; R may be infinite. The
// configuration count is infinite for eps_in = 0, which is refused.
Configuration sample_config(const StableModel& model, double R, double eps_in, RngStream& rng);

}  // namespace stabledev
