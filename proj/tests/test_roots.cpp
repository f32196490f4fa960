#include <gtest/gtest.h>

#include <cmath>

#include "stabledev/errors.hpp"
#include "stabledev/roots.hpp"

using namespace stabledev;

TEST(Roots, UnMatchesHighPrecisionValue) {
    const RootResult r = solve_un(2, 1.5, 1.0);
    EXPECT_NEAR(r.value, 1.2564312086261693, 1e-14);
    EXPECT_LT(r.residual, 1e-13);
}

TEST(Roots, UnAtTenMatchesHighPrecisionValue) {
    EXPECT_NEAR(solve_un(10, 1.5, 1.0).value, 4.38003180169929, 1e-13);
}

TEST(Roots, UnNeedsSlopeAboveOne) {
    // c = delta (n-1) / (2-a) = 0.009 / 0.1 < 1: no positive root
    EXPECT_THROW(solve_un(10, 1.9, 1e-3), DomainError);
}

TEST(Roots, UnSatisfiesItsEquationAcrossTheGrid) {
    for (int n = 2; n <= 30; ++n) {
        for (double a = 1.05; a < 1.96; a += 0.05) {
            const RootResult r = solve_un(n, a, 1.0);
            const double c = (n - 1) / (2.0 - a);
            EXPECT_LT(std::abs(std::expm1(r.value) - c * r.value) / std::exp(r.value), 1e-12) << n << " " << a;
            EXPECT_GT(r.value, std::log(c));
            EXPECT_LT(r.value, 2.0 * std::log(c) + 1e-12);
        }
    }
}

TEST(Roots, TaylorCandidatesAndUStar) {
    const UStarResult us = solve_u_star(10, 1.5, 1.0);
    ASSERT_EQ(us.k_candidates.size(), 4u);  // k = 2..5
    EXPECT_NEAR(us.k_candidates[0].second, 6.75, 1e-12);
    EXPECT_NEAR(us.k_candidates[1].second, 6.210590034081188, 1e-12);
    EXPECT_NEAR(us.k_candidates[2].second, 6.316359597656379, 1e-12);
    EXPECT_NEAR(us.k_candidates[3].second, 6.640091518201930, 1e-12);
    EXPECT_NEAR(us.u_star, 4.38003180169929, 1e-13);
    EXPECT_FALSE(us.argmin_k.has_value());
    EXPECT_DOUBLE_EQ(taylor_term_root(3, 10, 1.5, 1.0), us.k_candidates[1].second);
}

TEST(Roots, HRootsForCoefficientThirty) {
    const HRoots h = solve_h_roots_for_coefficient(30.0);
    EXPECT_NEAR(h.u1, 0.03450352248375382, 1e-15);
    EXPECT_NEAR(h.u2, 5.013289710018883, 1e-13);
    EXPECT_LT(h.residual1, 1e-13);
    EXPECT_LT(h.residual2, 1e-13);
}

TEST(Roots, HRootsForCoefficientFifteen) {
    const HRoots h = solve_h_roots_for_coefficient(15.0);
    EXPECT_NEAR(h.u1, 0.07161619788035324, 1e-15);
    EXPECT_NEAR(h.u2, 4.125153410660444, 1e-13);
}

TEST(Roots, HCoefficientAndThreshold) {
    EXPECT_DOUBLE_EQ(h_coefficient(10.0, 1.5, 0.5), 30.0);
    EXPECT_THROW(solve_h_roots_for_coefficient(2.7), DomainError);
    const HRoots h = solve_h_roots(10.0, 1.5, 1.05 * 0.5 * std::exp(1.0) / 30.0);
    EXPECT_NEAR(h.u1, 0.7192656598416483, 1e-13);
    EXPECT_NEAR(h.u2, 1.345717469772789, 1e-13);
}

TEST(Roots, Delta0MatchesHighPrecisionValue) {
    const RootResult d = solve_delta0(10, 0.8);
    EXPECT_NEAR(d.value, 0.08522534489381593, 1e-14);
    EXPECT_LT(d.residual, 1e-12);
}

TEST(Roots, ThetaAndItsInverse) {
    const Law law{1.5, 2.0};
    EXPECT_NEAR(theta(2.0, law), 4.762203155904598, 1e-14);
    EXPECT_GT(theta_derivative(3.0, law), 0.0);
    EXPECT_NEAR(theta_derivative(2.0, law), 0.0, 1e-15);  // minimum at sigma_bar
    for (double x : {5.0, 10.0, 1e3}) EXPECT_NEAR(theta(theta_inverse(x, law), law), x, 1e-12 * x);
}

TEST(Roots, SmallXRootLiesBeyondItsLowerBound) {
    const double c1 = 3.0, b = 0.5;
    const RootResult r = solve_u0(c1, b);
    EXPECT_NEAR(std::exp(-c1 * r.value) + b * r.value, 1.0, 1e-13);
    EXPECT_GT(r.value, u0_lower_bound(c1, b));
    EXPECT_LE(r.value, 1.0 / b);
    EXPECT_THROW(solve_u0(0.4, 0.5), DomainError);
}

TEST(Roots, BracketedRootRefusesMissingSignChange) {
    EXPECT_THROW(bracketed_root([](double x) { return x * x + 1.0; }, {}, {}, -1.0, 1.0, {}, "test"),
                 ConvergenceError);
}
