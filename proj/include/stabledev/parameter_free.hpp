#pragma once

#include <cstdint>
#include <vector>

#include "stabledev/certificate.hpp"
#include "stabledev/levy.hpp"

namespace stabledev {

// Monte Carlo oracle for E||Z_R||. Jumps beyond R are R times Pareto(1) radii,
// so conditionally on k jumps the mean norm is R e_k with e_k independent
// of R: E||Z_R|| = R sum_k P(N = k) e_k. Each e_k is estimated once from
// common random numbers, which makes the oracle smooth in R.
class TailMeanOracle {
public:
    TailMeanOracle(const StableModel& model, long draws_per_count, std::uint64_t seed);

    double mean(double R) const;
    // Half-width of the 99% interval divided by the estimate.
    double relative_ci(double R) const;

private:
    void extend(int k) const;
    double poisson_weight(int k, double m) const;
    int needed_count(double m) const;

    StableModel model_;
    long draws_;
    std::uint64_t seed_;
    mutable std::vector<double> e_;   // e_[k-1]
    mutable std::vector<double> se_;  // standard errors
};

struct ParameterFreeTruncation {
    double R;
    double R_lo;  // bracket from the mean sandwich
    double R_hi;
    double relative_ci;
};

// Solves x = alpha E||Z_R|| for R by bisection inside the sandwich bracket.
ParameterFreeTruncation solve_parameter_free_truncation(double x, const StableModel& model,
                                                         const TailMeanOracle& oracle);

// Sandwich bracket alone: alpha upper(R_hi) = x, alpha lower(R_lo) = x on the
// decreasing branch of the lower bound (R_lo = its peak when x is above it).
std::pair<double, double> parameter_free_bracket(double x, const Law& law);

// exp(-(2-a)((a-1)/a)^{a/(a-1)} x^{a/(a-1)} / (2 n sb^{1/(a-1)})) + sb / (a R(x)^a).
// The range end is implicit; valid_x is the set of scanned x
// where the two terms sum below 1, and the certificate records where the
// remainder stays below eps times the exponential term.
BoundCertificate small_x_parameterfree_certificate(int n, double eps, const StableModel& model, long mc_budget,
                                                   std::uint64_t seed, double max_relative_ci = 0.1);
PointBound small_x_bound_parameterfree(double x, int n, double eps, const StableModel& model, long mc_budget,
                                       std::uint64_t seed);

// The exponential term alone.
double parameter_free_exponential_term(double x, int n, const Law& law);

}  // namespace stabledev
