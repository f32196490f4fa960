#include <gtest/gtest.h>

#include "stabledev/errors.hpp"
#include "stabledev/parameter_free.hpp"

using namespace stabledev;

namespace {
StableModel plane_model() { return StableModel(1.5, SpectralMeasure::symmetric_axes(2, 2.0)); }
}  // namespace

TEST(TailMeanOracle, InsideTheAnalyticSandwich) {
    const StableModel m = plane_model();
    const TailMeanOracle oracle(m, 20000, 5);
    for (double R : {0.5, 1.0, 4.0}) {
        const auto s = tail_norm_mean_bounds(m, R);
        const double v = oracle.mean(R);
        const double slack = 4.0 * oracle.relative_ci(R) * v;
        EXPECT_GE(v, s.lower - slack) << R;
        EXPECT_LE(v, s.upper + slack) << R;
    }
}

TEST(TailMeanOracle, ReproducibleForAFixedSeed) {
    const StableModel m = plane_model();
    EXPECT_EQ(TailMeanOracle(m, 1000, 3).mean(1.0), TailMeanOracle(m, 1000, 3).mean(1.0));
}

TEST(ParameterFree, TruncationSolvesItsEquation) {
    const StableModel m = plane_model();
    const TailMeanOracle oracle(m, 20000, 5);
    const auto t = solve_parameter_free_truncation(1.0, m, oracle);
    EXPECT_NEAR(1.5 * oracle.mean(t.R), 1.0, 1e-8);
}

TEST(ParameterFree, BoundIsVacuousOnTheScan) {
    const auto c = small_x_parameterfree_certificate(10, 0.05, plane_model(), 2000, 5, 1.0);
    EXPECT_FALSE(c.applicable());
    EXPECT_GE(c.param("min_scanned_bound"), 1.0);
}

TEST(ParameterFree, NoisyOracleIsRejected) {
    EXPECT_THROW(small_x_parameterfree_certificate(10, 0.05, plane_model(), 100, 5, 1e-4), MonteCarloBudgetError);
}
