#include "stabledev/parameter_free.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "stabledev/errors.hpp"
#include "stabledev/roots.hpp"
#include "stabledev/sampler.hpp"

namespace stabledev {
namespace {
// Largest Poisson mean of the jump count the oracle is asked to resolve.
constexpr double kMaxTailCount = 400.0;
}  // namespace

TailMeanOracle::TailMeanOracle(const StableModel& model, long draws_per_count, std::uint64_t seed)
    : model_(model), draws_(draws_per_count), seed_(seed) {
    require_alpha_above_one(model.alpha, "the E||Z_R|| oracle");
    require(draws_per_count >= 100, "oracle needs at least 100 draws per jump count");
}

void TailMeanOracle::extend(int k) const {
    if (static_cast<int>(e_.size()) >= k) return;
    const int d = model_.dimension();
    const AtomPicker picker(model_.spectral);
    // Partial sums are rebuilt from the per-level streams, so the estimate of
    // e_k never depends on which counts were requested first.
    std::vector<double> sums(static_cast<std::size_t>(draws_) * d, 0.0);
    for (int level = 1; level <= k; ++level) {
        RngStream rng(seed_, static_cast<std::uint64_t>(level));
        double mean = 0.0, m2 = 0.0;
        for (long i = 0; i < draws_; ++i) {
            const auto& atom = model_.spectral.atoms()[picker.pick(rng)];
            const double r = sample_pareto_radius(1.0, model_.alpha, rng);
            double norm2 = 0.0;
            for (int c = 0; c < d; ++c) {
                double& s = sums[static_cast<std::size_t>(i) * d + c];
                s += r * atom.direction[c];
                norm2 += s * s;
            }
            const double v = std::sqrt(norm2);
            const double delta = v - mean;
            mean += delta / (i + 1);
            m2 += delta * (v - mean);
        }
        if (level > static_cast<int>(e_.size())) {
            e_.push_back(mean);
            se_.push_back(std::sqrt(m2 / (draws_ - 1) / draws_));
        }
    }
}

double TailMeanOracle::poisson_weight(int k, double m) const {
    return std::exp(-m + k * std::log(m) - std::lgamma(k + 1.0));
}

int TailMeanOracle::needed_count(double m) const {
    return static_cast<int>(std::ceil(m + 12.0 * std::sqrt(m) + 12.0));
}

double TailMeanOracle::mean(double R) const {
    const double m = tail_mass(model_, R);
    const int K = needed_count(m);
    extend(K);
    double s = 0.0;
    for (int k = 1; k <= K; ++k) s += poisson_weight(k, m) * e_[k - 1];
    return R * s;
}

double TailMeanOracle::relative_ci(double R) const {
    const double m = tail_mass(model_, R);
    const int K = needed_count(m);
    extend(K);
    double var = 0.0, s = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double w = poisson_weight(k, m);
        s += w * e_[k - 1];
        var += w * w * se_[k - 1] * se_[k - 1];
    }
    return 2.576 * std::sqrt(var) / s;
}

std::pair<double, double> parameter_free_bracket(double x, const Law& law) {
    validate_law(law);
    require_alpha_above_one(law.alpha, "the parameter-free truncation");
    require(x > 0.0, "x must be positive");
    const double a = law.alpha;
    const double sb = law.sigma_bar;
    const double r_hi = std::pow(a * sb / ((a - 1.0) * x), 1.0 / (a - 1.0));
    const double r_peak = std::pow(sb / (a - 1.0), 1.0 / a);
    auto lower_gap = [&](double R) { return a * tail_norm_mean_bounds(law, R).lower - x; };
    double r_lo = r_peak;
    if (lower_gap(r_peak) > 0.0) {
        // lower bound decreases beyond its peak and stays below the upper one
        r_lo = bracketed_root(lower_gap, {}, [x](double) { return x; }, r_peak, r_hi, RootConfig{}, "R_lo").value;
    }
    return {std::min(r_lo, r_hi), r_hi};
}

ParameterFreeTruncation solve_parameter_free_truncation(double x, const StableModel& model,
                                                         const TailMeanOracle& oracle) {
    const auto [r_lo, r_hi] = parameter_free_bracket(x, model.law());
    const double a = model.alpha;
    auto g = [&](double R) { return a * oracle.mean(R) - x; };
    double lo = r_lo;
    // Beyond the sandwich the oracle only needs a sign change; widen if the
    // noisy estimate sits outside the analytic bracket. E||Z_R|| stays bounded
    // as R -> 0, so large x may have no solution at all.
    const double lo_floor = std::pow(model.sigma_bar() / (a * kMaxTailCount), 1.0 / a);
    while (g(lo) < 0.0 && lo > lo_floor) lo = std::max(lo / 2.0, lo_floor);
    if (g(lo) < 0.0)
        throw DomainError("x = " + std::to_string(x) + " exceeds alpha E||Z_R|| for every R with tail mass up to " +
                          std::to_string(kMaxTailCount));
    double hi = r_hi;
    for (int i = 0; i < 60 && g(hi) > 0.0; ++i) hi *= 2.0;
    const RootResult root = bracketed_root(g, {}, [x](double) { return x; }, lo, hi, RootConfig{1e-10, 200},
                                           "parameter-free R");
    return {root.value, r_lo, r_hi, oracle.relative_ci(root.value)};
}

double parameter_free_exponential_term(double x, int n, const Law& law) {
    const double a = law.alpha;
    const double p = a / (a - 1.0);
    return std::exp(-(2.0 - a) * std::pow((a - 1.0) / a, p) * std::pow(x, p) /
                    (2.0 * n * std::pow(law.sigma_bar, 1.0 / (a - 1.0))));
}

BoundCertificate small_x_parameterfree_certificate(int n, double eps, const StableModel& model, long mc_budget,
                                                   std::uint64_t seed, double max_relative_ci) {
    const Law law = model.law();
    validate_law(law);
    require_alpha_above_one(law.alpha, "the parameter-free small-x bound");
    require(eps > 0.0, "eps must be positive");
    const UStarResult us = solve_u_star(n, law.alpha, 1.0);
    if (!(n >= 5 || n * us.u_star > 2.0 - law.alpha))
        throw DomainError("parameter-free small-x bound needs n >= 5 or n u_star > 2 - alpha");

    auto oracle = std::make_shared<TailMeanOracle>(model, mc_budget, seed);
    BoundCertificate cert;
    cert.regime = Regime::SmallXParameterFree;
    cert.set("n", n);
    cert.set("eps", eps);
    cert.set("u_star", us.u_star);
    cert.set("alpha", law.alpha);
    cert.set("sigma_bar", law.sigma_bar);
    cert.set("mc_budget", static_cast<double>(mc_budget));
    cert.formula = [oracle, model, n, law](double x) {
        const double R = solve_parameter_free_truncation(x, model, *oracle).R;
        return parameter_free_exponential_term(x, n, law) + tail_mass(law, R);
    };
    cert.notes.push_back("range end x0(n, eps) is not explicit; valid_x is the scanned set where the bound is below 1");

    // Scan x on a log grid around the natural scale sb^{1/a}.
    const double scale = std::pow(law.sigma_bar, 1.0 / law.alpha);
    double below_one_lo = 0.0, below_one_hi = 0.0, dominance_hi = 0.0, worst_ci = 0.0;
    double min_sum = std::numeric_limits<double>::infinity();
    bool dominance_run = true;
    for (int i = 0; i <= 60; ++i) {
        const double x = scale * std::pow(10.0, -3.0 + 4.0 * i / 60.0);
        ParameterFreeTruncation t{};
        try {
            t = solve_parameter_free_truncation(x, model, *oracle);
        } catch (const DomainError&) {
            cert.notes.push_back("scan stops at x = " + std::to_string(x) + ": no truncation level solves the equation");
            break;
        }
        worst_ci = std::max(worst_ci, t.relative_ci);
        const double expo = parameter_free_exponential_term(x, n, law);
        const double rem = tail_mass(law, t.R);
        min_sum = std::min(min_sum, expo + rem);
        if (expo + rem < 1.0) {
            if (below_one_lo == 0.0) below_one_lo = x;
            below_one_hi = x;
        }
        if (dominance_run && rem <= eps * expo)
            dominance_hi = x;
        else
            dominance_run = false;
    }
    if (worst_ci > max_relative_ci)
        throw MonteCarloBudgetError("E||Z_R|| oracle too noisy: relative 99% half-width " + std::to_string(worst_ci),
                                    worst_ci);
    cert.set("oracle_relative_ci", worst_ci);
    cert.set("min_scanned_bound", min_sum);
    cert.set("eps_dominance_hi", dominance_hi);
    if (below_one_hi > 0.0) {
        cert.valid_x = {below_one_lo, below_one_hi, true, true};
    } else {
        cert.notes.push_back("the two terms sum to at least 1 at every scanned x: no non-trivial range");
    }
    return cert;
}

PointBound small_x_bound_parameterfree(double x, int n, double eps, const StableModel& model, long mc_budget,
                                       std::uint64_t seed) {
    return point_bound(small_x_parameterfree_certificate(n, eps, model, mc_budget, seed), x);
}

}  // namespace stabledev
