#include "stabledev/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "stabledev/errors.hpp"

namespace stabledev {

namespace {

constexpr std::uint64_t kPilotStreamBase = 1ULL << 40;

// Fills out[begin, end) chunk by chunk; chunk c owns stream (seed, base + c).
template <class Fill>
void run_chunks(std::vector<double>& out, long chunk_size, int workers, Fill fill) {
    const long budget = static_cast<long>(out.size());
    const long chunks = (budget + chunk_size - 1) / chunk_size;
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<long>(workers, std::max(1L, chunks)));
    std::atomic<long> next{0};
    auto work = [&] {
        for (long c = next++; c < chunks; c = next++) {
            const long begin = c * chunk_size;
            fill(static_cast<std::uint64_t>(c), begin, std::min(budget, begin + chunk_size));
        }
    };
    if (workers == 1) {
        work();
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

const char* center_name(CenterMode m) { return m == CenterMode::Mean ? "mean" : "median"; }

}  // namespace

std::vector<double> verification_grid(const Interval& range, int count) {
    require(!range.empty(), "verification grid needs a non-empty range");
    require(count >= 1, "grid needs at least one point");
    double lo = range.lo > 0.0 ? range.lo : range.hi / 100.0;
    double hi = range.hi;
    // Keep strictly inside open ends.
    if (!range.lo_closed && range.lo > 0.0) lo *= 1.0 + 1e-12;
    if (!range.hi_closed) hi *= 1.0 - 1e-12;
    std::vector<double> grid;
    if (count == 1) return {std::sqrt(lo * hi)};
    for (int i = 0; i < count; ++i) grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    return grid;
}

std::vector<double> sample_function_values(const StableModel& model, const TestFunction& fn, long budget,
                                           std::uint64_t seed, int workers, long chunk_size) {
    require(budget >= 1 && chunk_size >= 1, "budget and chunk size must be positive");
    std::vector<double> out(budget);
    run_chunks(out, chunk_size, workers, [&](std::uint64_t c, long begin, long end) {
        RngStream rng(seed, c);
        for (long i = begin; i < end; ++i) out[i] = fn.evaluate(sample_stable_vector(model, rng));
    });
    return out;
}

std::vector<double> sample_truncated_function_values(const StableModel& model, const TestFunction& fn, double R,
                                                     double eps_in, long budget, std::uint64_t seed, int workers,
                                                     long chunk_size) {
    require(budget >= 1 && chunk_size >= 1, "budget and chunk size must be positive");
    const YRSampler sampler(model, R, eps_in);
    std::vector<double> out(budget);
    run_chunks(out, chunk_size, workers, [&](std::uint64_t c, long begin, long end) {
        RngStream rng(seed, c);
        for (long i = begin; i < end; ++i) out[i] = fn.evaluate(sampler.draw(rng));
    });
    return out;
}

std::vector<double> sample_functional_values(const StableModel& model, const TestFunctional& functional, double R,
                                             double eps_in, long budget, std::uint64_t seed, int workers,
                                             long chunk_size) {
    require(budget >= 1 && chunk_size >= 1, "budget and chunk size must be positive");
    std::vector<double> out(budget);
    run_chunks(out, chunk_size, workers, [&](std::uint64_t c, long begin, long end) {
        RngStream rng(seed, c);
        for (long i = begin; i < end; ++i) out[i] = functional.evaluate(sample_config(model, R, eps_in, rng));
    });
    return out;
}

double default_config_radius(const Law& law) {
    validate_law(law);
    return std::pow(law.sigma_bar / (law.alpha * 1e-6), 1.0 / law.alpha);
}

InnerRadiusChoice choose_inner_radius(const StableModel& model, const TestFunctional& functional, double R,
                                      std::uint64_t seed, long pilot_budget) {
    const Law law = model.law();
    require(law.alpha < 1.0, "the dropped-mass rule needs alpha < 1");
    // Pilot inner radius: about 20 expected points.
    double eps = std::pow(law.sigma_bar / (law.alpha * 20.0), 1.0 / law.alpha);
    InnerRadiusChoice choice{};
    for (int round = 0; round < 2; ++round) {
        const auto pilot = sample_functional_values(model, functional, R, eps, pilot_budget,
                                                    seed, 1, pilot_budget);
        const double dropped = law.sigma_bar * std::pow(eps, 1.0 - law.alpha) / (1.0 - law.alpha);
        const double median = lower_median(pilot) + dropped;
        require(median > 0.0, "functional median must be positive for the dropped-mass rule");
        choice.pilot_median = median;
        eps = std::pow(1e-4 * median * median * (2.0 - law.alpha) / law.sigma_bar, 1.0 / (2.0 - law.alpha));
        seed += 1;
    }
    choice.eps_in = eps;
    choice.dropped_mean = law.sigma_bar * std::pow(eps, 1.0 - law.alpha) / (1.0 - law.alpha);
    choice.dropped_std = std::sqrt(discarded_second_moment(law, eps));
    return choice;
}

VerificationReport verify_certificate(const BoundCertificate& cert, const Target& target, const StableModel& model,
                                      const VerifyOptions& opt) {
    if (!cert.applicable()) throw DomainError("certificate is inapplicable: its range is empty");
    require(opt.budget >= 10000, "verification budget must be at least 1e4");
    require(opt.grid_points >= 1, "grid needs at least one point");
    if (cert.regime == Regime::GaussianLimit) throw DomainError("gaussian-limit curves are not verified by sampling");

    VerificationReport rep;
    rep.seed = opt.seed;
    rep.regime = to_string(cert.regime);
    rep.certificate_params = cert.params;
    if (cert.gamma) rep.gamma = to_string(*cert.gamma);
    rep.valid_lo = cert.valid_x.lo;
    rep.valid_hi = cert.valid_x.hi;
    rep.strict = opt.strict;
    rep.shift = opt.shift;

    std::vector<double> values;
    CenterMode mode = is_median_regime(cert.regime) ? CenterMode::Median : CenterMode::Mean;
    std::optional<double> exact_center;

    if (const auto* fn = std::get_if<TestFunction>(&target)) {
        rep.target = fn->name;
        if (!check_lipschitz(*fn, model.dimension()).pass)
            throw DomainError("target '" + fn->name + "' failed the Lipschitz registration check");
        if (cert.regime == Regime::TruncatedLemma) {
            const double R = cert.param("R");
            const double eps = opt.eps_in > 0.0 ? opt.eps_in : 1e-3 * R;
            rep.sampling = {{"R", R}, {"eps_in", eps}, {"discarded_second_moment", discarded_second_moment(model.law(), eps)}};
            values = sample_truncated_function_values(model, *fn, R, eps, opt.budget, opt.seed, opt.workers,
                                                      opt.chunk_size);
        } else {
            values = sample_function_values(model, *fn, opt.budget, opt.seed, opt.workers, opt.chunk_size);
            if (mode == CenterMode::Mean && fn->exact_mean && model.alpha > 1.0) exact_center = fn->exact_mean(model);
        }
    } else {
        const auto& functional = std::get<TestFunctional>(target);
        rep.target = functional.name;
        const bool paired = cert.regime == Regime::TruncatedLemma || is_median_regime(cert.regime);
        if (!paired)
            throw DomainError("functional targets pair only with the truncated and median regimes, not " +
                              to_string(cert.regime));
        if (!functional.difference_bound_certified || !check_difference_bound(functional, model).pass)
            throw DomainError("functional '" + functional.name + "' failed the difference-bound registration check");
        double R = 0.0, eps = 0.0;
        if (cert.regime == Regime::TruncatedLemma) {
            R = cert.param("R");
            eps = opt.eps_in > 0.0 ? opt.eps_in : 1e-3 * R;
        } else {
            R = opt.config_R > 0.0 ? opt.config_R : default_config_radius(model.law());
            if (opt.eps_in > 0.0) {
                eps = opt.eps_in;
            } else if (model.alpha < 1.0) {
                const InnerRadiusChoice choice =
                    choose_inner_radius(model, functional, R, opt.seed ^ kPilotStreamBase);
                eps = choice.eps_in;
                rep.sampling.emplace_back("pilot_median", choice.pilot_median);
                rep.sampling.emplace_back("dropped_std", choice.dropped_std);
            } else {
                eps = 1e-3 * R;
            }
        }
        rep.sampling.emplace_back("R", R);
        rep.sampling.emplace_back("eps_in", eps);
        if (model.alpha < 1.0)
            rep.sampling.emplace_back("truncation_shift",
                                      model.sigma_bar() * std::pow(eps, 1.0 - model.alpha) / (1.0 - model.alpha));
        rep.sampling.emplace_back("discarded_second_moment", discarded_second_moment(model.law(), eps));
        values = sample_functional_values(model, functional, R, eps, opt.budget, opt.seed, opt.workers,
                                          opt.chunk_size);
    }

    rep.sample_count = static_cast<long>(values.size());
    if (exact_center) {
        rep.center_mode = "exact-mean";
        rep.center = *exact_center;
        rep.center_stderr = 0.0;
    } else {
        const CenterEstimate c = estimate_center(values, mode, opt.seed);
        rep.center_mode = center_name(mode);
        rep.center = c.value;
        rep.center_stderr = c.stderr_;
    }

    const std::vector<double> grid = verification_grid(cert.valid_x, opt.grid_points);
    const auto tails = estimate_tail(values, rep.center - opt.shift, grid);
    rep.overall_pass = true;
    for (const auto& t : tails) {
        const double bound = cert.evaluate(t.x);
        const double tested = opt.strict ? t.ci.hi : t.p_hat;
        const bool pass = opt.strict ? t.ci.hi <= bound : t.p_hat <= bound + 4.0 * t.stderr_;
        rep.grid.push_back({t.x, t.p_hat, t.ci.lo, t.ci.hi, bound, bound - tested, pass, t.count});
        rep.overall_pass = rep.overall_pass && pass;
    }
    return rep;
}

}  // namespace stabledev
