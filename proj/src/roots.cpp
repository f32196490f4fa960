#include "stabledev/roots.hpp"

#include <cmath>
#include <limits>

#include "stabledev/errors.hpp"

namespace stabledev {

namespace {

bool same_sign(double a, double b) { return (a < 0.0) == (b < 0.0); }

}  // namespace

void RootConfig::validate() const {
    require(abs_tol > 0.0, "abs_tol must be positive");
    require(max_iter >= 1, "max_iter must be >= 1");
}

RootResult bracketed_root(const ScalarFn& f, const ScalarFn& df, const ScalarFn& scale, double lo,
                          double hi, const RootConfig& cfg, const std::string& name) {
    cfg.validate();
    auto scaled = [&](double x, double fx) {
        const double s = scale ? scale(x) : 1.0;
        return std::abs(fx) / (s > 0.0 ? s : 1.0);
    };
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};
    if (same_sign(flo, fhi) || !std::isfinite(flo) || !std::isfinite(fhi))
        throw ConvergenceError(name + ": root is not bracketed");

    RootResult best{lo, scaled(lo, flo), 0};
    if (scaled(hi, fhi) < best.residual) best = {hi, scaled(hi, fhi), 0};

    double x = lo + 0.5 * (hi - lo);
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const double fx = f(x);
        const double res = scaled(x, fx);
        if (res < best.residual) best = {x, res, it};
        best.iterations = it;
        if (fx == 0.0 || res <= cfg.abs_tol * 1e-3) break;
        if (same_sign(fx, flo)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;  // bracket is two adjacent doubles

        double next = mid;
        if (df) {
            const double d = df(x);
            if (d != 0.0 && std::isfinite(d)) {
                const double newton = x - fx / d;
                if (newton > lo && newton < hi) next = newton;
            }
        }
        // Newton stalls on the same point once converged; fall back to halving.
        x = (next == x) ? mid : next;
    }
    if (!(best.residual <= cfg.abs_tol))
        throw ConvergenceError(name + ": residual " + std::to_string(best.residual) + " above tolerance");
    return best;
}

RootResult solve_un(int n, double alpha, double delta, const RootConfig& cfg) {
    require(n >= 2, "n must be >= 2");
    require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0, 2)");
    require(delta > 0.0, "delta must be positive");
    const double c = delta * (n - 1) / (2.0 - alpha);
    if (!(c > 1.0))
        throw DomainError("no positive root of e^u - 1 - c u: coefficient c = " + std::to_string(c) +
                          " must exceed 1");
    auto f = [c](double u) { return std::expm1(u) - c * u; };
    auto df = [c](double u) { return std::exp(u) - c; };
    auto scale = [](double u) { return std::exp(u); };
    // e^u - 1 - cu < 0 at log c and > 0 at 2 log c for every c > 1.
    const double lo = std::log(c);
    double hi = 2.0 * std::log(c);
    while (!(f(hi) > 0.0)) hi = 2.0 * hi + 1.0;
    return bracketed_root(f, df, scale, lo, hi, cfg, "u_n");
}

double taylor_term_root(int k, int n, double alpha, double delta) {
    require(k >= 2 && 2.0 * k < n - 1 + alpha, "k outside the range 1 < k < (n-1+alpha)/2");
    const double log_base = std::lgamma(k + 1.0) + std::log(delta * (n - 1)) + std::log(k + 1.0 - alpha) -
                            std::log(static_cast<double>(n - k)) - std::log(2.0 - alpha);
    return std::exp(log_base / (k - 1));
}

UStarResult solve_u_star(int n, double alpha, double delta, const RootConfig& cfg) {
    const RootResult un = solve_un(n, alpha, delta, cfg);
    UStarResult out;
    out.u_n = un.value;
    out.u_n_residual = un.residual;
    out.u_star = un.value;
    for (int k = 2; 2.0 * k < n - 1 + alpha; ++k) {
        const double uk = taylor_term_root(k, n, alpha, delta);
        out.k_candidates.emplace_back(k, uk);
        if (uk < out.u_star) {
            out.u_star = uk;
            out.argmin_k = k;
        }
    }
    return out;
}

double h_coefficient(double n_delta, double alpha, double eps) {
    require(n_delta >= 1.0, "n_delta must be >= 1");
    require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0, 2)");
    require(eps > 0.0, "eps must be positive");
    return 2.0 * n_delta * alpha * eps / (2.0 - alpha);
}

HRoots solve_h_roots_for_coefficient(double A, const RootConfig& cfg) {
    if (!(A > std::exp(1.0)))
        throw DomainError("e^u - A u needs A > e for two roots; got A = " + std::to_string(A));
    auto f = [A](double u) { return std::exp(u) - A * u; };
    auto df = [A](double u) { return std::exp(u) - A; };
    auto scale = [](double u) { return std::exp(u); };
    const double mid = std::log(A);
    const RootResult r1 = bracketed_root(f, df, scale, 0.0, mid, cfg, "u1");
    const RootResult r2 = bracketed_root(f, df, scale, mid, 2.0 * mid, cfg, "u2");
    return {r1.value, r2.value, A, r1.residual, r2.residual};
}

HRoots solve_h_roots(double n_delta, double alpha, double eps, const RootConfig& cfg) {
    return solve_h_roots_for_coefficient(h_coefficient(n_delta, alpha, eps), cfg);
}

RootResult solve_delta0(int n, double alpha, const RootConfig& cfg) {
    require(n >= 2, "n must be >= 2");
    require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0, 2)");
    const double rhs = (2.0 - alpha) / (2.0 * n * alpha);
    auto f = [rhs](double d) { return -d * std::log(0.5 - d) - rhs; };
    auto df = [](double d) { return -std::log(0.5 - d) + d / (0.5 - d); };
    auto scale = [rhs](double) { return rhs; };
    const double hi = std::nextafter(0.5, 0.0);
    if (!(f(hi) > 0.0)) throw ConvergenceError("delta0: no root below 1/2 in double precision");
    return bracketed_root(f, df, scale, 0.0, hi, cfg, "delta0");
}

double theta(double u, const Law& law) {
    require_alpha_above_one(law.alpha, "theta");
    require(u >= law.sigma_bar * (1.0 - 1e-12), "theta is defined for u >= sigma_bar");
    return std::pow(u, 1.0 / law.alpha) * (1.0 + law.sigma_bar / ((law.alpha - 1.0) * u));
}

double theta_derivative(double u, const Law& law) {
    return std::pow(u, 1.0 / law.alpha - 1.0) * (1.0 - law.sigma_bar / u) / law.alpha;
}

double theta_inverse(double x, const Law& law, const RootConfig& cfg) {
    require_alpha_above_one(law.alpha, "theta_inverse");
    const double edge = theta(law.sigma_bar, law);
    require(x >= edge * (1.0 - 1e-12), "theta_inverse argument below the range edge");
    if (x <= edge) return law.sigma_bar;
    auto f = [&](double u) { return theta(u, law) - x; };
    auto df = [&](double u) { return theta_derivative(u, law); };
    auto scale = [x](double) { return x; };
    const double hi = std::max(law.sigma_bar, std::pow(x, law.alpha));
    return bracketed_root(f, df, scale, law.sigma_bar, hi, cfg, "theta_inverse").value;
}

double u0_lower_bound(double c1, double b) {
    require(c1 > b && b > 0.0, "u0 bound needs c1 > b > 0");
    return std::log(c1 / b) / c1;
}

RootResult solve_u0(double c1, double b, const RootConfig& cfg) {
    if (!(b > 0.0 && c1 > b))
        throw DomainError("exp(-c1 u) + b u = 1 has no positive root unless c1 > b > 0");
    auto f = [=](double u) { return std::exp(-c1 * u) + b * u - 1.0; };
    auto df = [=](double u) { return -c1 * std::exp(-c1 * u) + b; };
    auto scale = [=](double u) { return 1.0 + b * u; };
    return bracketed_root(f, df, scale, u0_lower_bound(c1, b), 1.0 / b, cfg, "u0");
}

double small_x_rate(int n, double lambda, const Law& law) {
    require_alpha_above_one(law.alpha, "small-x rate");
    const double a = law.alpha;
    const double gap = lambda - law.sigma_bar / (a - 1.0);
    return (2.0 - a) * gap * gap / (2.0 * n * std::pow(law.sigma_bar, 1.0 / (a - 1.0)));
}

RootResult solve_u0_lambda(int n, double alpha, double lambda, double sigma_bar, const RootConfig& cfg) {
    const Law law{alpha, sigma_bar};
    validate_law(law);
    require(n >= 2, "n must be >= 2");
    return solve_u0(small_x_rate(n, lambda, law), sigma_bar / alpha, cfg);
}

}  // namespace stabledev
