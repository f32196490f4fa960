#pragma once

#include "stabledev/certificate.hpp"
#include "stabledev/levy.hpp"

namespace stabledev {

// Remainder P(omega has a point beyond R): linear sb/(a R^a) or exact 1 - exp(-sb/(a R^a)).
double gamma_value(GammaVariant gamma, double R, const Law& law);
double gamma_inverse(GammaVariant gamma, double level, const Law& law);

// Inverse of R -> exp(-(2-a) R^a / (2 n sb)).
double gamma_tilde_inverse(double level, int n, const Law& law);

// Deviation of a truncated Poisson functional F_R with |D_y F| <= ||y||
// around its mean: exp(-(2-a) x^2 / (2 n sb R^{2-a})) on (0, x0].
BoundCertificate truncated_functional_certificate(double R, int n, const Law& law);
PointBound truncated_functional_bound(double x, double R, int n, const StableModel& model);

// Admissible truncation levels for the median-shift step:
// lower_term <= R <= upper_term, with lower_term the inf over delta in (0, 1/2)
// of max(gamma^{-1}(delta), gamma_tilde^{-1}(1/2 - delta)).
struct MedianWindow {
    double lower_term = 0.0;
    double upper_term = 0.0;  // R_0; zero when u_star does not exist
    double argmin_delta = 0.0;
    GammaVariant gamma = GammaVariant::Linear;
    int n = 0;
    Law law{};
    bool empty() const { return !(lower_term <= upper_term); }
};

MedianWindow median_shift_window(int n, const Law& law, GammaVariant gamma);

struct InfMax {
    double value;  // the infimum of the max (in R units, not R^alpha)
    double argmin_delta;
};

// Direct minimisation: 1024-point grid scan refined by golden section.
InfMax inf_max_numeric(int n, const Law& law, GammaVariant gamma);

double median_threshold(int n, double alpha);

BoundCertificate median_v1_certificate(int n, double eps, const Law& law, GammaVariant gamma);
PointBound median_bound_v1(double x, int n, double eps, const StableModel& model, GammaVariant gamma);

BoundCertificate median_v2_certificate(int n, double eps, const Law& law, GammaVariant gamma);
PointBound median_bound_v2(double x, int n, double eps, const StableModel& model, GammaVariant gamma);

// Counterpart of the small-x bound for Poisson functionals; alpha in (1, 2) only.
BoundCertificate median_small_x_certificate(int n, double lambda, const Law& law);
PointBound median_small_x_bound(double x, int n, double lambda, const StableModel& model);

}  // namespace stabledev
