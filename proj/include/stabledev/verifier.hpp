#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stabledev/certificate.hpp"
#include "stabledev/levy.hpp"
#include "stabledev/sampler.hpp"
#include "stabledev/stats.hpp"
#include "stabledev/test_functions.hpp"

namespace stabledev {

using Target = std::variant<TestFunction, TestFunctional>;

struct VerifyOptions {
    long budget = 1000000;
    std::uint64_t seed = 0;
    bool strict = false;   // CI upper end <= bound instead of p_hat <= bound + 4 stderr
    double shift = 0.0;    // added to every centred value (falsifiability runs)
    int grid_points = 20;
    int workers = 0;       // 0: hardware concurrency
    long chunk_size = 1 << 16;
    // Configuration sampling for functionals; 0 selects the documented defaults.
    double config_R = 0.0;
    double eps_in = 0.0;
};

struct GridRow {
    double x;
    double empirical_tail;
    double ci_lo;
    double ci_hi;
    double bound;
    double margin;  // bound minus the tested statistic (p_hat or ci_hi)
    bool pass;
    long exceedances;
};

struct VerificationReport {
    std::vector<GridRow> grid;
    long sample_count = 0;
    std::uint64_t seed = 0;
    std::string regime;
    std::string target;
    std::vector<std::pair<std::string, double>> certificate_params;
    std::string gamma;  // empty unless the certificate carries one
    double valid_lo = 0.0;
    double valid_hi = 0.0;
    std::string center_mode;
    double center = 0.0;
    double center_stderr = 0.0;
    bool strict = false;
    double shift = 0.0;
    std::vector<std::pair<std::string, double>> sampling;  // eps_in, R, truncation shift, ...
    bool overall_pass = false;
};

// `count` geometric points strictly inside the interval; a zero lower end is
// replaced by hi / 100.
std::vector<double> verification_grid(const Interval& range, int count);

// Draws f(X) for `budget` exact stable vectors. Chunk c uses stream
// (seed, stream_base + c), so the output does not depend on `workers`.
std::vector<double> sample_function_values(const StableModel& model, const TestFunction& fn, long budget,
                                           std::uint64_t seed, int workers = 0, long chunk_size = 1 << 16);

// Same for f(Y_R).
std::vector<double> sample_truncated_function_values(const StableModel& model, const TestFunction& fn, double R,
                                                     double eps_in, long budget, std::uint64_t seed,
                                                     int workers = 0, long chunk_size = 1 << 16);

// Same for F(omega) on configurations restricted to (eps_in, R].
std::vector<double> sample_functional_values(const StableModel& model, const TestFunctional& functional, double R,
                                             double eps_in, long budget, std::uint64_t seed, int workers = 0,
                                             long chunk_size = 1 << 16);

// Outer radius making a missing point beyond it less likely than 1e-6.
double default_config_radius(const Law& law);

struct InnerRadiusChoice {
    double eps_in;
    double pilot_median;      // median of the functional including the dropped mean
    double dropped_mean;      // sb eps^{1-a} / (1-a), the truncation shift
    double dropped_std;
};

// For alpha < 1: the standard deviation of the dropped mass sum_{||y|| <= eps} ||y||
// is held to 1% of the functional's median, measured on a pilot run.
InnerRadiusChoice choose_inner_radius(const StableModel& model, const TestFunctional& functional, double R,
                                      std::uint64_t seed, long pilot_budget = 4000);

VerificationReport verify_certificate(const BoundCertificate& cert, const Target& target, const StableModel& model,
                                      const VerifyOptions& options);

}  // namespace stabledev
