#pragma once

#include <vector>

#include "stabledev/certificate.hpp"
#include "stabledev/levy.hpp"
#include "stabledev/roots.hpp"

namespace stabledev {

// 1 + delta (n - 1).
double n_delta(int n, double delta);

// The canonical "auto" choice: 1.05 times a regime's eps threshold.
constexpr double kAutoEpsFactor = 1.05;

// Deviation of f(Y_R) for 1-Lipschitz f: exp(-(2-a) x^2 / (2 n_delta sb R^{2-a}))
// on (0, x0]. The range is empty when the exponential root does not exist.
BoundCertificate truncated_lipschitz_certificate(double R, int n, double delta, const Law& law);
PointBound truncated_lipschitz_bound(double x, double R, int n, double delta, const StableModel& model);

struct SmallXWindow {
    double lambda1 = 0.0;  // lower end: the bound equals 1 at 0+
    double lambda2 = 0.0;  // upper end: the truncated lemma stops applying
    double lambda0 = 0.0;  // optimum of the exponential term alone
    double feasibility_lhs = 0.0;
    double feasibility_rhs = 0.0;  // u_star^2
    double u_star = 0.0;
    bool feasible = false;

    // `count` equally spaced interior points.
    std::vector<double> quantiles(int count) const;
    double midpoint() const { return 0.5 * (lambda1 + lambda2); }
};

// Throws DomainError when u_star does not exist for (n, alpha).
SmallXWindow small_x_lambda_window(int n, const Law& law);

// exp(-c1 (x/lambda)^{a/(a-1)}) + (sb/a)(x/lambda)^{a/(a-1)} on (0, x1].
// lambda must lie in the closed window; the endpoints give an empty range
// (lower end) or the widest one (upper end).
BoundCertificate small_x_certificate(int n, double lambda, const Law& law);
PointBound small_x_bound(double x, int n, double lambda, const StableModel& model);

double intermediate_v1_threshold(int n, double delta, double alpha);
BoundCertificate intermediate_v1_certificate(int n, double delta, double eps, const Law& law);
PointBound intermediate_v1_bound(double x, int n, double delta, double eps, const StableModel& model);

double intermediate_v2_threshold(int n, double alpha);
BoundCertificate intermediate_v2_certificate(int n, double eps, const Law& law);
PointBound intermediate_v2_bound(double x, int n, double eps, const StableModel& model);

// exp(-x^2 / (2 n_delta)).
double gaussian_limit_bound(double x, int n, double delta);
// The delta -> 0 limit exp(-x^2 / 2).
double gaussian_limit_curve(double x);
// (1+eps) exp(-x^2/(2 n_delta) (1 + a eps/(a-1))^{-2}): the intermediate-v1
// bound with its denominator replaced by the alpha -> 2 limiting factor.
double gaussian_limiting_factor_bound(double x, int n, double delta, double eps, double alpha);

}  // namespace stabledev
