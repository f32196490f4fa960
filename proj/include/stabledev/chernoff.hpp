#pragma once

#include "stabledev/levy.hpp"

namespace stabledev {

// Exponential-moment functional of the stable measure truncated at R:
// h_R(s) = int ||u|| (e^{s||u||} - 1) nu_R(du). Increasing and convex, h_R(0) = 0.
struct HRCurve {
    double R;
    double sigma_bar;
    double alpha;

    void validate() const;  // refuses R = infinity
};

double h_R(double s, const HRCurve& curve);
double h_R_derivative(double s, const HRCurve& curve);
double h_R_inverse(double t, const HRCurve& curve);

// int_0^x h_R^{-1}(t) dt by adaptive Simpson at relative tolerance `rel_tol`.
double chernoff_exponent(double x, const HRCurve& curve, double rel_tol = 1e-8);

// exp(-int_0^x h_R^{-1}): the exact Chernoff bound every truncated lemma relaxes.
double chernoff_bound(double x, const HRCurve& curve);

}  // namespace stabledev
