#include "stabledev/bounds_mean.hpp"

#include <cmath>
#include <optional>

#include "stabledev/errors.hpp"

namespace stabledev {

namespace {

std::optional<UStarResult> try_u_star(int n, double alpha, double delta) {
    if (!(delta * (n - 1) / (2.0 - alpha) > 1.0)) return std::nullopt;
    return solve_u_star(n, alpha, delta);
}

void put_law(BoundCertificate& cert, const Law& law) {
    cert.set("alpha", law.alpha);
    cert.set("sigma_bar", law.sigma_bar);
}

// theta written in the form used by the intermediate ranges:
// scale * u * (1 + (2-a)/(2 m (a-1) u))^a, returned as x (not x^a).
double range_endpoint(double scale, double u, double m, double alpha) {
    const double factor = 1.0 + (2.0 - alpha) / (2.0 * m * (alpha - 1.0) * u);
    return std::pow(scale * u * std::pow(factor, alpha), 1.0 / alpha);
}

}  // namespace

double n_delta(int n, double delta) {
    require(n >= 2, "n must be >= 2");
    require(delta > 0.0, "delta must be positive");
    return 1.0 + delta * (n - 1);
}

BoundCertificate truncated_lipschitz_certificate(double R, int n, double delta, const Law& law) {
    validate_law(law);
    require_alpha_above_one(law.alpha, "the truncated Lipschitz lemma");
    require(R > 0.0 && std::isfinite(R), "truncation level R must be positive and finite");
    const double a = law.alpha;
    const double nd = n_delta(n, delta);
    const double denom = 2.0 * nd * law.sigma_bar * std::pow(R, 2.0 - a);

    BoundCertificate cert;
    cert.regime = Regime::TruncatedLemma;
    cert.set("n", n);
    cert.set("delta", delta);
    cert.set("R", R);
    cert.set("n_delta", nd);
    put_law(cert, law);
    cert.formula = [a, denom](double x) { return std::exp(-(2.0 - a) * x * x / denom); };

    if (auto us = try_u_star(n, a, delta)) {
        const double x0 = nd * law.sigma_bar * std::pow(R, 1.0 - a) * us->u_star / (2.0 - a);
        cert.set("u_star", us->u_star);
        cert.set("x0", x0);
        cert.valid_x = {0.0, x0, false, true};
    } else {
        cert.notes.push_back("delta (n-1) / (2-alpha) <= 1: the exponential root does not exist, range is empty");
    }
    return cert;
}

PointBound truncated_lipschitz_bound(double x, double R, int n, double delta, const StableModel& model) {
    return point_bound(truncated_lipschitz_certificate(R, n, delta, model.law()), x);
}

std::vector<double> SmallXWindow::quantiles(int count) const {
    std::vector<double> out;
    for (int i = 1; i <= count; ++i) out.push_back(lambda1 + (lambda2 - lambda1) * i / (count + 1.0));
    return out;
}

SmallXWindow small_x_lambda_window(int n, const Law& law) {
    validate_law(law);
    require_alpha_above_one(law.alpha, "the small-x bound");
    const double a = law.alpha;
    const double sb = law.sigma_bar;
    const UStarResult us = solve_u_star(n, a, 1.0);
    SmallXWindow w;
    w.u_star = us.u_star;
    w.lambda1 = sb / (a - 1.0) + std::sqrt(2.0 * n * std::pow(sb, a / (a - 1.0)) / (a * (2.0 - a)));
    w.lambda2 = sb / (a - 1.0) * (1.0 + (a - 1.0) / (2.0 - a) * n * us.u_star);
    w.lambda0 = a * sb / ((2.0 - a) * (a - 1.0));
    w.feasibility_lhs = 2.0 * (2.0 - a) * std::pow(sb, (2.0 - a) / (a - 1.0)) / (a * n);
    w.feasibility_rhs = us.u_star * us.u_star;
    w.feasible = w.feasibility_lhs < w.feasibility_rhs;
    return w;
}

BoundCertificate small_x_certificate(int n, double lambda, const Law& law) {
    const SmallXWindow w = small_x_lambda_window(n, law);
    if (!w.feasible)
        throw DomainError("small-x bound infeasible: 2(2-a) sb^{(2-a)/(a-1)} / (a n) >= u_star^2");
    require(lambda >= w.lambda1 && lambda <= w.lambda2, "lambda outside the admissible window [" +
                                                            std::to_string(w.lambda1) + ", " +
                                                            std::to_string(w.lambda2) + "]");
    const double a = law.alpha;
    const double p = a / (a - 1.0);
    const double c1 = small_x_rate(n, lambda, law);
    const double b = law.sigma_bar / a;

    BoundCertificate cert;
    cert.regime = Regime::SmallX;
    cert.set("n", n);
    cert.set("lambda", lambda);
    cert.set("lambda1", w.lambda1);
    cert.set("lambda2", w.lambda2);
    cert.set("lambda0", w.lambda0);
    cert.set("u_star", w.u_star);
    cert.set("rate", c1);
    put_law(cert, law);
    cert.formula = [=](double x) {
        const double u = std::pow(x / lambda, p);
        return std::exp(-c1 * u) + b * u;
    };

    // Below c1 = b the bound exceeds 1 near 0; the window's lower end sits there.
    if (!(c1 > b * (1.0 + 1e-12))) {
        cert.notes.push_back("lambda at the lower window end: the range is empty");
        cert.set("x1", 0.0);
        return cert;
    }
    // The closed form is the minimiser of the bound, so the bound is
    // non-increasing on (0, x1]; the root of "bound = 1" is recorded too.
    const double u_min = u0_lower_bound(c1, b);
    const double x1 = lambda * std::pow(u_min, 1.0 / p);
    const RootResult u0 = solve_u0(c1, b);
    cert.set("x1", x1);
    cert.set("x1_root", lambda * std::pow(u0.value, 1.0 / p));
    cert.set("u0", u0.value);
    cert.valid_x = {0.0, x1, false, true};
    if (lambda == w.lambda2) cert.notes.push_back("lambda at the upper window end");
    return cert;
}

PointBound small_x_bound(double x, int n, double lambda, const StableModel& model) {
    return point_bound(small_x_certificate(n, lambda, model.law()), x);
}

double intermediate_v1_threshold(int n, double delta, double alpha) {
    return (2.0 - alpha) * std::exp(1.0) / (2.0 * alpha * n_delta(n, delta));
}

BoundCertificate intermediate_v1_certificate(int n, double delta, double eps, const Law& law) {
    validate_law(law);
    require_alpha_above_one(law.alpha, "the intermediate bound");
    const double a = law.alpha;
    const double sb = law.sigma_bar;
    const double nd = n_delta(n, delta);
    const double threshold = intermediate_v1_threshold(n, delta, a);
    require(eps > threshold, "eps must exceed " + std::to_string(threshold));

    const HRoots h = solve_h_roots(nd, a, eps);
    const double factor = 1.0 + (2.0 - a) / (2.0 * nd * (a - 1.0) * h.u1);
    const double rate = (2.0 - a) / (2.0 * nd * sb);

    BoundCertificate cert;
    cert.regime = Regime::IntermediateV1;
    cert.set("n", n);
    cert.set("delta", delta);
    cert.set("eps", eps);
    cert.set("n_delta", nd);
    cert.set("u1", h.u1);
    cert.set("u2", h.u2);
    put_law(cert, law);
    cert.formula = [=](double x) { return (1.0 + eps) * std::exp(-rate * std::pow(x / factor, a)); };

    const double scale = 2.0 * nd * sb / (2.0 - a);
    const double lo = range_endpoint(scale, h.u1, nd, a);
    cert.set("valid_lo", lo);
    if (auto us = try_u_star(n, a, delta)) {
        const double u_bar = std::min(h.u2, us->u_star / 2.0);
        // The upper end carries 2n(a-1) where the lower carries 2 n_delta (a-1).
        const double hi = range_endpoint(scale, u_bar, n, a);
        cert.set("u_star", us->u_star);
        cert.set("valid_hi", hi);
        cert.valid_x = {lo, hi, false, false};
        if (!(lo < hi)) {
            cert.valid_x = Interval::empty_interval();
            cert.notes.push_back("range is empty: lower end exceeds upper end");
        }
    } else {
        cert.notes.push_back("delta (n-1) / (2-alpha) <= 1: the exponential root does not exist, range is empty");
    }
    return cert;
}

PointBound intermediate_v1_bound(double x, int n, double delta, double eps, const StableModel& model) {
    return point_bound(intermediate_v1_certificate(n, delta, eps, model.law()), x);
}

double intermediate_v2_threshold(int n, double alpha) {
    require(n >= 2, "n must be >= 2");
    return std::exp(1.0) * (2.0 - alpha) / (2.0 * n * alpha);
}

BoundCertificate intermediate_v2_certificate(int n, double eps, const Law& law) {
    validate_law(law);
    require_alpha_above_one(law.alpha, "the intermediate bound");
    const double a = law.alpha;
    const double sb = law.sigma_bar;
    const double threshold = intermediate_v2_threshold(n, a);
    require(eps >= threshold, "eps must be at least " + std::to_string(threshold));

    const double c = (2.0 - a) / (2.0 * n * a);
    const double c23 = std::pow(c, 2.0 / 3.0);
    const double lower_u = 1.0 - c23;
    const double factor = 1.0 + (2.0 - a) / (2.0 * n * (a - 1.0) * lower_u);
    const double rate = (2.0 - a) / (2.0 * n * sb);

    BoundCertificate cert;
    cert.regime = Regime::IntermediateV2;
    cert.set("n", n);
    cert.set("delta", 1.0);
    cert.set("eps", eps);
    cert.set("c", c);
    put_law(cert, law);
    cert.formula = [=](double x) { return (1.0 + eps) * std::exp(-rate * std::pow(x / factor, a)); };
    if (c23 > 0.68) cert.notes.push_back("the 0.68 cap binds");

    const double scale = 2.0 * n * sb / (2.0 - a);
    const double lo = range_endpoint(scale, lower_u, n, a);
    cert.set("valid_lo", lo);
    if (auto us = try_u_star(n, a, 1.0)) {
        const double upper_u = std::min(1.0 + std::min(c23, 0.68), us->u_star / 2.0);
        const double hi = range_endpoint(scale, upper_u, n, a);
        cert.set("u_star", us->u_star);
        cert.set("valid_hi", hi);
        cert.valid_x = {lo, hi, false, false};
        if (!(lo < hi)) {
            cert.valid_x = Interval::empty_interval();
            cert.notes.push_back("range is empty: lower end exceeds upper end");
        }
    } else {
        cert.notes.push_back("(n-1) / (2-alpha) <= 1: the exponential root does not exist, range is empty");
    }
    return cert;
}

PointBound intermediate_v2_bound(double x, int n, double eps, const StableModel& model) {
    return point_bound(intermediate_v2_certificate(n, eps, model.law()), x);
}

double gaussian_limit_bound(double x, int n, double delta) {
    require(x >= 0.0, "x must be non-negative");
    return std::exp(-x * x / (2.0 * n_delta(n, delta)));
}

double gaussian_limit_curve(double x) { return std::exp(-x * x / 2.0); }

double gaussian_limiting_factor_bound(double x, int n, double delta, double eps, double alpha) {
    const double factor = 1.0 + alpha * eps / (alpha - 1.0);
    return (1.0 + eps) * std::exp(-x * x / (2.0 * n_delta(n, delta)) / (factor * factor));
}

}  // namespace stabledev
