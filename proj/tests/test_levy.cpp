#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "stabledev/errors.hpp"
#include "stabledev/levy.hpp"

using namespace stabledev;

TEST(SpectralMeasure, SymmetricAxesSplitsMassEvenly) {
    const auto s = SpectralMeasure::symmetric_axes(2, 2.0);
    ASSERT_EQ(s.atoms().size(), 4u);
    EXPECT_EQ(s.dimension(), 2);
    EXPECT_DOUBLE_EQ(s.total_mass(), 2.0);
    for (const auto& a : s.atoms()) EXPECT_DOUBLE_EQ(a.weight, 0.5);
}

TEST(SpectralMeasure, RejectsNonUnitDirections) {
    EXPECT_THROW(SpectralMeasure({{{1.0, 1e-5}, 1.0}}), DomainError);
    EXPECT_NO_THROW(SpectralMeasure({{{1.0, 1e-13}, 1.0}}));
}

TEST(SpectralMeasure, RejectsBadWeightsAndMixedDimensions) {
    EXPECT_THROW(SpectralMeasure({{{1.0, 0.0}, 0.0}}), DomainError);
    EXPECT_THROW(SpectralMeasure({{{1.0, 0.0}, -1.0}}), DomainError);
    EXPECT_THROW(SpectralMeasure({{{1.0, 0.0}, 1.0}, {{1.0}, 1.0}}), DomainError);
    EXPECT_THROW(SpectralMeasure(std::vector<Atom>{}), DomainError);
}

TEST(StableModel, ValidatesAlphaAndShift) {
    const auto s = SpectralMeasure::symmetric_axes(2, 1.0);
    EXPECT_THROW(StableModel(0.0, s), DomainError);
    EXPECT_THROW(StableModel(2.0, s), DomainError);
    EXPECT_THROW(StableModel(1.5, s, {1.0}), DomainError);
    const StableModel m(1.5, s);
    EXPECT_EQ(m.shift_or_zero(), (Vec{0.0, 0.0}));
}

TEST(Levy, TailMassAndNonzeroProbability) {
    const Law law{1.5, 2.0};
    EXPECT_NEAR(tail_mass(law, 1.0), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(prob_tail_nonzero(law, 1.0), 1.0 - std::exp(-4.0 / 3.0), 1e-15);
    EXPECT_EQ(tail_mass(law, std::numeric_limits<double>::infinity()), 0.0);
}

TEST(Levy, TruncatedMomentMatchesClosedForm) {
    // sb R^{k-a} / (k-a) with sb = 2, R = 2, k = 3, a = 1.5
    EXPECT_NEAR(truncated_norm_moment(Law{1.5, 2.0}, 3, 2.0), 3.771236166328254, 1e-14);
    EXPECT_THROW(truncated_norm_moment(Law{1.5, 2.0}, 1, 2.0), DomainError);
}

TEST(Levy, TailMeanSandwichIsOrderedAndVanishesAtInfinity) {
    const Law law{1.5, 2.0};
    for (double R : {0.1, 1.0, 10.0}) {
        const auto b = tail_norm_mean_bounds(law, R);
        EXPECT_GT(b.lower, 0.0);
        EXPECT_LE(b.lower, b.upper);
    }
    const auto inf = tail_norm_mean_bounds(law, std::numeric_limits<double>::infinity());
    EXPECT_EQ(inf.lower, 0.0);
    EXPECT_EQ(inf.upper, 0.0);
    EXPECT_THROW(tail_norm_mean_bounds(Law{0.8, 1.0}, 1.0), DomainError);
}
