#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "stabledev/errors.hpp"
#include "stabledev/sampler.hpp"

using namespace stabledev;

namespace {

StableModel one_sided(double alpha) { return StableModel(alpha, SpectralMeasure({{{1.0}, 1.0}})); }

// Empirical E exp(i t X) with its standard error per component.
struct EmpiricalCf {
    std::complex<double> value;
    double se_re;
    double se_im;
};

EmpiricalCf empirical_cf(const StableModel& m, double t, int draws, std::uint64_t seed) {
    RngStream rng(seed, 0);
    double c = 0, s = 0, c2 = 0, s2 = 0;
    for (int i = 0; i < draws; ++i) {
        const double x = sample_stable_vector(m, rng)[0];
        c += std::cos(t * x);
        s += std::sin(t * x);
        c2 += std::cos(t * x) * std::cos(t * x);
        s2 += std::sin(t * x) * std::sin(t * x);
    }
    c /= draws;
    s /= draws;
    return {{c, s}, std::sqrt((c2 / draws - c * c) / draws), std::sqrt((s2 / draws - s * s) / draws)};
}

}  // namespace

TEST(Pareto, MedianAndSupport) {
    EXPECT_NEAR(pareto_radius_from_uniform(2.0, 1.5, 0.5), 2.0 * std::pow(2.0, 1.0 / 1.5), 1e-12);
    RngStream rng(5, 0);
    for (int i = 0; i < 1000; ++i) EXPECT_GT(sample_pareto_radius(2.0, 1.5, rng), 2.0);
}

// E exp(itX) = exp(w (Gamma(-a) (-it)^a + it/(a-1))) for the one-sided law with
// Levy density w r^{-1-a} on (0, inf) and jumps of size <= 1 compensated.
TEST(StableSampler, OneSidedCharacteristicFunctionAlphaAboveOne) {
    const auto cf = empirical_cf(one_sided(1.5), 0.7, 200000, 11);
    EXPECT_NEAR(cf.value.real(), 0.3429403498987237, 5 * cf.se_re);
    EXPECT_NEAR(cf.value.imag(), 0.1536863635681911, 5 * cf.se_im);
}

TEST(StableSampler, OneSidedCharacteristicFunctionAlphaBelowOne) {
    const auto cf = empirical_cf(one_sided(0.8), 0.7, 200000, 12);
    EXPECT_NEAR(cf.value.real(), 0.2171789965769450, 5 * cf.se_re);
    EXPECT_NEAR(cf.value.imag(), 0.1494955402391963, 5 * cf.se_im);
}

TEST(StableSampler, SymmetricMarginal) {
    const StableModel m(1.5, SpectralMeasure::symmetric_axes(2, 2.0));
    const auto cf = empirical_cf(m, 0.5, 200000, 13);
    EXPECT_NEAR(cf.value.real(), 0.5538740579484033, 5 * cf.se_re);
    EXPECT_NEAR(cf.value.imag(), 0.0, 5 * cf.se_im);
}

TEST(StableSampler, RefusesAlphaNearOne) {
    RngStream rng(1, 0);
    EXPECT_THROW(sample_stable_vector(one_sided(1.0 + 1e-8), rng), UnsupportedRegime);
}

TEST(ZR, NonzeroProbabilityAndJumpCount) {
    const StableModel m(1.5, SpectralMeasure::symmetric_axes(2, 2.0));
    RngStream rng(21, 0);
    const int n = 200000;
    long nonzero = 0, jumps = 0;
    for (int i = 0; i < n; ++i) {
        const ZRDraw d = sample_Z_R_with_count(m, 1.0, rng);
        nonzero += d.count > 0;
        jumps += d.count;
        if (d.count == 0) ASSERT_EQ(d.value, (Vec{0.0, 0.0}));
    }
    const double p = 1.0 - std::exp(-4.0 / 3.0);
    EXPECT_NEAR(static_cast<double>(nonzero) / n, p, 5 * std::sqrt(p * (1 - p) / n));
    EXPECT_NEAR(static_cast<double>(jumps) / n, 4.0 / 3.0, 5 * std::sqrt(4.0 / 3.0 / n));
}

TEST(YR, DriftAndJumpRate) {
    const StableModel m(1.5, SpectralMeasure({{{1.0}, 1.0}}));
    const YRSampler s(m, 1.0, 1e-2);
    // Jumps in (eps, R] all compensated: drift -w (1 - eps^{1-a}) / (1 - a).
    EXPECT_NEAR(s.drift()[0], -(1.0 - std::pow(1e-2, -0.5)) / (-0.5), 1e-12);
    EXPECT_NEAR(s.expected_jump_count(), (std::pow(1e-2, -1.5) - 1.0) / 1.5, 1e-9);
    EXPECT_NEAR(s.discarded_second_moment(), std::pow(1e-2, 0.5) / 0.5, 1e-15);
}

// E Y_R = shift + sum_j xi_j w_j (1 - R^{1-a}) / (a - 1) ... vanishes for a symmetric measure.
TEST(YR, SymmetricMeanIsZero) {
    const StableModel m(1.5, SpectralMeasure::symmetric_axes(1, 2.0));
    RngStream rng(31, 0);
    const int n = 50000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double v = sample_Y_R(m, 1.0, 1e-3, rng)[0];
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    // Var Y_R = sb R^{2-a}/(2-a) minus the discarded part.
    EXPECT_NEAR(var, 2.0 / 0.5 - discarded_second_moment(Law{1.5, 2.0}, 1e-3), 0.1);
    EXPECT_NEAR(mean, 0.0, 5 * std::sqrt(var / n));
}

TEST(Config, PointCountAndRadii) {
    const StableModel m(0.8, SpectralMeasure::symmetric_axes(2, 1.0));
    RngStream rng(41, 0);
    const double eps = 0.1, R = 10.0;
    const double mass = annulus_mass(m.law(), eps, R);
    EXPECT_NEAR(mass, (std::pow(eps, -0.8) - std::pow(R, -0.8)) / 0.8, 1e-12);
    const int n = 20000;
    long total = 0;
    for (int i = 0; i < n; ++i) {
        const Configuration c = sample_config(m, R, eps, rng);
        total += static_cast<long>(c.points.size());
        for (const auto& p : c.points) {
            const double r = std::hypot(p[0], p[1]);
            ASSERT_GT(r, eps * (1 - 1e-12));
            ASSERT_LE(r, R * (1 + 1e-12));
        }
    }
    EXPECT_NEAR(static_cast<double>(total) / n, mass, 5 * std::sqrt(mass / n));
}

TEST(Config, RefusesZeroInnerRadius) {
    const StableModel m(0.8, SpectralMeasure::symmetric_axes(2, 1.0));
    RngStream rng(1, 0);
    EXPECT_THROW(sample_config(m, 1.0, 0.0, rng), DomainError);
    EXPECT_NO_THROW(sample_config(m, std::numeric_limits<double>::infinity(), 1.0, rng));
}

TEST(Config, AnnulusRadiusEndpoints) {
    EXPECT_NEAR(annulus_radius_from_uniform(0.1, 10.0, 0.8, 0.0 + 1e-300), 0.1, 1e-6);
    const double r = annulus_radius_from_uniform(0.1, 10.0, 0.8, 0.5);
    EXPECT_GT(r, 0.1);
    EXPECT_LT(r, 10.0);
}
