#include "stabledev/chernoff.hpp"

#include <algorithm>
#include <cmath>

#include "stabledev/errors.hpp"
#include "stabledev/roots.hpp"

namespace stabledev {

namespace {

// sum_{k>=1} z^{k-shift} / ((k-shift)! (k+1-alpha)), shift in {0, 1}.
double series(double z, double alpha, int shift) {
    double term = 1.0;  // z^{k-shift} / (k-shift)!
    if (shift == 0) term = z;
    double sum = 0.0;
    for (int k = 1; k < 100000; ++k) {
        if (k > 1) term *= z / (k - shift);
        const double add = term / (k + 1.0 - alpha);
        sum += add;
        if (k > z && add <= 1e-17 * sum) break;
    }
    return sum;
}

struct Simpson {
    const ScalarFn& f;
    int max_depth;

    double run(double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
        if (depth >= max_depth) throw ConvergenceError("adaptive Simpson: maximum depth reached");
        return run(a, m, fa, flm, fm, left, eps / 2.0, depth + 1) +
               run(m, b, fm, frm, fb, right, eps / 2.0, depth + 1);
    }
};

}  // namespace

void HRCurve::validate() const {
    require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0, 2)");
    require(sigma_bar > 0.0, "sigma_bar must be positive");
    require(R > 0.0, "R must be positive");
    require(std::isfinite(R), "no exponential moment without truncation: R must be finite");
}

double h_R(double s, const HRCurve& c) {
    c.validate();
    require(s >= 0.0, "h_R needs s >= 0");
    if (s == 0.0) return 0.0;
    return c.sigma_bar * std::pow(c.R, 1.0 - c.alpha) * series(s * c.R, c.alpha, 0);
}

double h_R_derivative(double s, const HRCurve& c) {
    c.validate();
    require(s >= 0.0, "h_R needs s >= 0");
    return c.sigma_bar * std::pow(c.R, 2.0 - c.alpha) * series(s * c.R, c.alpha, 1);
}

double h_R_inverse(double t, const HRCurve& c) {
    c.validate();
    require(t >= 0.0, "h_R^{-1} needs t >= 0");
    if (t == 0.0) return 0.0;
    auto f = [&](double s) { return h_R(s, c) - t; };
    // h_R(s) >= h_R'(0) s bounds the root by t / h_R'(0); doubling up from a
    // smaller start keeps h_R finite when that bound is far too generous.
    double lo = 0.0;
    double hi = std::min(t / h_R_derivative(0.0, c), 1.0 / c.R);
    while (f(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    auto df = [&](double s) { return h_R_derivative(s, c); };
    auto scale = [t](double) { return t; };
    if (f(hi) == 0.0) return hi;
    return bracketed_root(f, df, scale, lo, hi, RootConfig{}, "h_R inverse").value;
}

double chernoff_exponent(double x, const HRCurve& c, double rel_tol) {
    c.validate();
    require(x >= 0.0, "x must be non-negative");
    if (x == 0.0) return 0.0;
    const ScalarFn g = [&](double t) { return h_R_inverse(t, c); };
    const double fa = 0.0;
    const double fm = g(0.5 * x);
    const double fb = g(x);
    const double whole = x / 6.0 * (fa + 4.0 * fm + fb);
    const Simpson simpson{g, 40};
    return simpson.run(0.0, x, fa, fm, fb, whole, rel_tol * std::abs(whole), 0);
}

double chernoff_bound(double x, const HRCurve& curve) {
    require(x > 0.0, "chernoff_bound needs x > 0");
    return std::exp(-chernoff_exponent(x, curve));
}

}  // namespace stabledev
