#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabledev/levy.hpp"

namespace stabledev {

struct RootConfig {
    double abs_tol = 1e-13;
    int max_iter = 200;
    void validate() const;
};

// `residual` is |f(value)| divided by the magnitude of the dominant term of
// the equation (documented per solver), so it is meaningful at any scale.
struct RootResult {
    double value = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

using ScalarFn = std::function<double(double)>;

// Safeguarded Newton on a sign-changing bracket [lo, hi]. `df` may be empty
// (pure bisection); `scale` may be empty (absolute residual). Iterates until
// the bracket collapses to adjacent doubles or the residual is far below
// tolerance; throws ConvergenceError when the final residual exceeds abs_tol.
RootResult bracketed_root(const ScalarFn& f, const ScalarFn& df, const ScalarFn& scale, double lo,
                          double hi, const RootConfig& cfg, const std::string& name);

// Positive root of e^u - 1 - c u with c = delta (n-1) / (2-alpha) > 1.
// Residual scaled by e^u.
RootResult solve_un(int n, double alpha, double delta, const RootConfig& cfg = {});

struct UStarResult {
    double u_star = 0.0;
    std::optional<int> argmin_k;  // empty when the exponential root wins
    double u_n = 0.0;
    double u_n_residual = 0.0;
    std::vector<std::pair<int, double>> k_candidates;
};

// Candidate from the k-th Taylor term, valid for integers 1 < k < (n-1+alpha)/2.
double taylor_term_root(int k, int n, double alpha, double delta);

UStarResult solve_u_star(int n, double alpha, double delta, const RootConfig& cfg = {});

struct HRoots {
    double u1 = 0.0;
    double u2 = 0.0;
    double coefficient = 0.0;  // A in e^u - A u
    double residual1 = 0.0;
    double residual2 = 0.0;
};

// Coefficient A = 2 n_delta alpha eps / (2 - alpha).
double h_coefficient(double n_delta, double alpha, double eps);

// Both roots of e^u - A u; needs A > e. Residuals scaled by e^u.
HRoots solve_h_roots(double n_delta, double alpha, double eps, const RootConfig& cfg = {});
HRoots solve_h_roots_for_coefficient(double A, const RootConfig& cfg = {});

// Root in (0, 1/2) of delta log(1/(1/2 - delta)) = (2-alpha)/(2 n alpha).
// Residual relative to the right-hand side.
RootResult solve_delta0(int n, double alpha, const RootConfig& cfg = {});

// theta(u) = u^{1/alpha} (1 + sigma_bar / ((alpha-1) u)), increasing on [sigma_bar, inf).
double theta(double u, const Law& law);
double theta_derivative(double u, const Law& law);
double theta_inverse(double x, const Law& law, const RootConfig& cfg = {});

// Small-x root: exp(-c1 u) + b u = 1, positive root when c1 > b.
// Residual scaled by 1 + b u.
RootResult solve_u0(double c1, double b, const RootConfig& cfg = {});

// Same equation with c1 = (2-alpha)(lambda - sigma_bar/(alpha-1))^2 / (2 n sigma_bar^{1/(alpha-1)})
// and b = sigma_bar / alpha.
double small_x_rate(int n, double lambda, const Law& law);
RootResult solve_u0_lambda(int n, double alpha, double lambda, double sigma_bar, const RootConfig& cfg = {});

// Explicit lower bound log(c1/b)/c1 on the root; also the minimiser of the left side.
double u0_lower_bound(double c1, double b);

}  // namespace stabledev
