#pragma once

#include <cstdint>
#include <vector>

namespace stabledev {

struct ConfidenceInterval {
    double lo;
    double hi;
};

// Exact binomial interval at the given two-sided confidence level.
ConfidenceInterval clopper_pearson(long successes, long trials, double level = 0.99);

// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

struct KSResult {
    double statistic;
    double p_value;  // asymptotic Kolmogorov distribution with the small-sample correction
};

KSResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct TailEstimate {
    double x;
    long count;
    long n;
    double p_hat;
    double stderr_;
    ConfidenceInterval ci;
};

// Fraction of samples with value - center >= x, with a 99% Clopper-Pearson interval.
// x = -infinity gives p_hat = 1.
std::vector<TailEstimate> estimate_tail(const std::vector<double>& samples, double center,
                                        const std::vector<double>& x_grid);

enum class CenterMode { Mean, Median };

struct CenterEstimate {
    double value;
    double stderr_;
};

// Lower median of a sample (the element of rank floor((n-1)/2)).
double lower_median(std::vector<double> samples);

// Mean with its standard error, or lower median with a 200-resample
// bootstrap standard error drawn from the given seed.
CenterEstimate estimate_center(const std::vector<double>& samples, CenterMode mode,
                               std::uint64_t bootstrap_seed = 0);

}  // namespace stabledev
