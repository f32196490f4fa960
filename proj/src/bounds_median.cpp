#include "stabledev/bounds_median.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "stabledev/bounds_mean.hpp"
#include "stabledev/errors.hpp"
#include "stabledev/roots.hpp"

namespace stabledev {

namespace {

std::optional<UStarResult> try_u_star(int n, double alpha) {
    if (!((n - 1) / (2.0 - alpha) > 1.0)) return std::nullopt;
    return solve_u_star(n, alpha, 1.0);
}

void put_common(BoundCertificate& cert, int n, double eps, const Law& law, const MedianWindow& w) {
    cert.set("n", n);
    cert.set("delta", 1.0);
    cert.set("eps", eps);
    cert.set("alpha", law.alpha);
    cert.set("sigma_bar", law.sigma_bar);
    cert.set("lower_term", w.lower_term);
    cert.set("upper_term", w.upper_term);
    cert.set("argmin_delta", w.argmin_delta);
    cert.gamma = w.gamma;
}

std::function<double(double)> median_formula(int n, double eps, const Law& law) {
    const double rate = (2.0 - law.alpha) / (2.0 * n * law.sigma_bar);
    const double a = law.alpha;
    return [=](double x) { return (1.0 + eps) * std::exp(-rate * std::pow(x / 2.0, a)); };
}

// Window on y = (x/2)^alpha mapped back to x.
Interval x_window(double y_lo, double y_hi, bool closed, double alpha) {
    if (!(y_lo < y_hi || (closed && y_lo == y_hi))) return Interval::empty_interval();
    return {2.0 * std::pow(y_lo, 1.0 / alpha), 2.0 * std::pow(y_hi, 1.0 / alpha), closed, closed};
}

}  // namespace

double gamma_value(GammaVariant gamma, double R, const Law& law) {
    const double t = tail_mass(law, R);
    return gamma == GammaVariant::Linear ? t : -std::expm1(-t);
}

double gamma_inverse(GammaVariant gamma, double level, const Law& law) {
    validate_law(law);
    require(level > 0.0 && level < 1.0, "gamma inverse needs a level in (0, 1)");
    const double mass = gamma == GammaVariant::Linear ? level : -std::log1p(-level);
    return std::pow(law.sigma_bar / (law.alpha * mass), 1.0 / law.alpha);
}

double gamma_tilde_inverse(double level, int n, const Law& law) {
    validate_law(law);
    require(level > 0.0 && level < 1.0, "gamma-tilde inverse needs a level in (0, 1)");
    return std::pow(2.0 * n * law.sigma_bar / (2.0 - law.alpha) * -std::log(level), 1.0 / law.alpha);
}

BoundCertificate truncated_functional_certificate(double R, int n, const Law& law) {
    validate_law(law);
    require(n >= 2, "n must be >= 2");
    require(R > 0.0 && std::isfinite(R), "truncation level R must be positive and finite");
    const double a = law.alpha;
    const double denom = 2.0 * n * law.sigma_bar * std::pow(R, 2.0 - a);
    BoundCertificate cert;
    cert.regime = Regime::TruncatedLemma;
    cert.set("n", n);
    cert.set("delta", 1.0);
    cert.set("R", R);
    cert.set("alpha", a);
    cert.set("sigma_bar", law.sigma_bar);
    cert.formula = [a, denom](double x) { return std::exp(-(2.0 - a) * x * x / denom); };
    cert.notes.push_back("functional form: needs |D_y F| <= ||y|| on B(0, R)");
    if (auto us = try_u_star(n, a)) {
        const double x0 = n * law.sigma_bar * std::pow(R, 1.0 - a) * us->u_star / (2.0 - a);
        cert.set("u_star", us->u_star);
        cert.set("x0", x0);
        cert.valid_x = {0.0, x0, false, true};
    } else {
        cert.notes.push_back("(n-1) / (2-alpha) <= 1: the exponential root does not exist, range is empty");
    }
    return cert;
}

PointBound truncated_functional_bound(double x, double R, int n, const StableModel& model) {
    return point_bound(truncated_functional_certificate(R, n, model.law()), x);
}

InfMax inf_max_numeric(int n, const Law& law, GammaVariant gamma) {
    validate_law(law);
    require(n >= 2, "n must be >= 2");
    auto objective = [&](double d) {
        return std::max(gamma_inverse(gamma, d, law), gamma_tilde_inverse(0.5 - d, n, law));
    };
    constexpr int grid = 1024;
    auto node = [](int i) { return 0.5 * (i + 0.5) / grid; };
    int best = 0;
    double best_value = objective(node(0));
    for (int i = 1; i < grid; ++i) {
        const double v = objective(node(i));
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    double a = best > 0 ? node(best - 1) : 0.0;
    double b = best < grid - 1 ? node(best + 1) : 0.5;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    for (int it = 0; it < 200 && (b - a) > 4.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    const double arg = fc < fd ? c : d;
    return {std::min(fc, fd), arg};
}

MedianWindow median_shift_window(int n, const Law& law, GammaVariant gamma) {
    validate_law(law);
    require(n >= 2, "n must be >= 2");
    MedianWindow w;
    w.gamma = gamma;
    w.n = n;
    w.law = law;
    if (gamma == GammaVariant::Linear) {
        const double d0 = solve_delta0(n, law.alpha).value;
        w.argmin_delta = d0;
        w.lower_term = std::pow(law.sigma_bar / (law.alpha * d0), 1.0 / law.alpha);
    } else {
        const InfMax im = inf_max_numeric(n, law, gamma);
        w.argmin_delta = im.argmin_delta;
        w.lower_term = im.value;
    }
    if (auto us = try_u_star(n, law.alpha))
        w.upper_term = std::pow(2.0 * n * law.sigma_bar * us->u_star / (2.0 - law.alpha), 1.0 / law.alpha);
    else
        w.upper_term = 0.0;  // the truncated lemma gives no range at all
    return w;
}

double median_threshold(int n, double alpha) {
    require(n >= 2, "n must be >= 2");
    return (2.0 - alpha) * std::exp(1.0) / (2.0 * alpha * n);
}

BoundCertificate median_v1_certificate(int n, double eps, const Law& law, GammaVariant gamma) {
    validate_law(law);
    const double a = law.alpha;
    const double threshold = median_threshold(n, a);
    require(eps > threshold, "eps must exceed " + std::to_string(threshold));
    const MedianWindow w = median_shift_window(n, law, gamma);
    const HRoots h = solve_h_roots(n, a, eps);

    BoundCertificate cert;
    cert.regime = Regime::MedianV1;
    put_common(cert, n, eps, law, w);
    cert.set("u1", h.u1);
    cert.set("u2", h.u2);
    cert.formula = median_formula(n, eps, law);

    const double scale = 2.0 * n * law.sigma_bar / (2.0 - a);
    const double y_lo = std::max(std::pow(w.lower_term, a), scale * h.u1);
    if (auto us = try_u_star(n, a)) {
        cert.set("u_star", us->u_star);
        const double y_hi = scale * std::min(h.u2, us->u_star);
        cert.valid_x = x_window(y_lo, y_hi, true, a);
    } else {
        cert.notes.push_back("(n-1) / (2-alpha) <= 1: the exponential root does not exist, range is empty");
    }
    if (cert.valid_x.empty()) cert.notes.push_back("range is empty");
    return cert;
}

PointBound median_bound_v1(double x, int n, double eps, const StableModel& model, GammaVariant gamma) {
    return point_bound(median_v1_certificate(n, eps, model.law(), gamma), x);
}

BoundCertificate median_v2_certificate(int n, double eps, const Law& law, GammaVariant gamma) {
    validate_law(law);
    const double a = law.alpha;
    const double threshold = median_threshold(n, a);
    require(eps > threshold, "eps must exceed " + std::to_string(threshold));
    const MedianWindow w = median_shift_window(n, law, gamma);
    const double c = (2.0 - a) / (2.0 * n * a);
    const double c23 = std::pow(c, 2.0 / 3.0);

    BoundCertificate cert;
    cert.regime = Regime::MedianV2;
    put_common(cert, n, eps, law, w);
    cert.set("c", c);
    cert.formula = median_formula(n, eps, law);
    if (c23 > 0.68) cert.notes.push_back("the 0.68 cap binds");

    const double scale = 2.0 * n * law.sigma_bar / (2.0 - a);
    const double y_lo = std::max(std::pow(w.lower_term, a), scale * (1.0 - c23));
    if (auto us = try_u_star(n, a)) {
        cert.set("u_star", us->u_star);
        const double y_hi = scale * std::min(1.0 + std::min(c23, 0.68), us->u_star / 2.0);
        cert.valid_x = x_window(y_lo, y_hi, false, a);
    } else {
        cert.notes.push_back("(n-1) / (2-alpha) <= 1: the exponential root does not exist, range is empty");
    }
    if (cert.valid_x.empty()) cert.notes.push_back("range is empty");
    return cert;
}

PointBound median_bound_v2(double x, int n, double eps, const StableModel& model, GammaVariant gamma) {
    return point_bound(median_v2_certificate(n, eps, model.law(), gamma), x);
}

BoundCertificate median_small_x_certificate(int n, double lambda, const Law& law) {
    validate_law(law);
    if (law.alpha <= 1.0)
        throw UnsupportedRegime("median small-x bound covers alpha in (1, 2) only; alpha <= 1 needs control of the "
                                "truncated median that is not available");
    BoundCertificate cert = small_x_certificate(n, lambda, law);
    cert.regime = Regime::MedianSmallX;
    return cert;
}

PointBound median_small_x_bound(double x, int n, double lambda, const StableModel& model) {
    return point_bound(median_small_x_certificate(n, lambda, model.law()), x);
}

}  // namespace stabledev
