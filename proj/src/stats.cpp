#include "stabledev/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "stabledev/errors.hpp"
#include "stabledev/rng.hpp"

namespace stabledev {

ConfidenceInterval clopper_pearson(long k, long n, double level) {
    require(n > 0 && k >= 0 && k <= n, "clopper_pearson needs 0 <= k <= n, n > 0");
    require(level > 0.0 && level < 1.0, "confidence level must lie in (0, 1)");
    const double tail = (1.0 - level) / 2.0;
    ConfidenceInterval ci{0.0, 1.0};
    if (k > 0) ci.lo = boost::math::quantile(boost::math::beta_distribution<double>(k, n - k + 1), tail);
    if (k < n) ci.hi = boost::math::quantile(boost::math::beta_distribution<double>(k + 1, n - k), 1.0 - tail);
    return ci;
}

double chi_square_sf(double statistic, double dof) {
    require(dof > 0.0, "chi-square needs positive degrees of freedom");
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

KSResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    require(!a.empty() && !b.empty(), "KS test needs two non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    // Q_KS(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2)
    double p = 0.0;
    if (lambda < 1e-3) {
        p = 1.0;
    } else {
        double sign = 1.0;
        for (int k = 1; k <= 100; ++k) {
            const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
            p += term;
            if (std::abs(term) < 1e-12 * std::abs(p)) break;
            sign = -sign;
        }
        p = std::clamp(2.0 * p, 0.0, 1.0);
    }
    return {d, p};
}

std::vector<TailEstimate> estimate_tail(const std::vector<double>& samples, double center,
                                        const std::vector<double>& x_grid) {
    require(!samples.empty(), "estimate_tail needs samples");
    require(std::isfinite(center), "center must be finite");
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const long n = static_cast<long>(sorted.size());
    std::vector<TailEstimate> out;
    for (double x : x_grid) {
        long count = n;
        if (x != -std::numeric_limits<double>::infinity()) {
            // value - center is monotone in value, so the predicate splits the sorted sample.
            auto it = std::partition_point(sorted.begin(), sorted.end(),
                                           [&](double v) { return !(v - center >= x); });
            count = static_cast<long>(sorted.end() - it);
        }
        const double p = static_cast<double>(count) / n;
        out.push_back({x, count, n, p, std::sqrt(p * (1.0 - p) / n), clopper_pearson(count, n)});
    }
    return out;
}

double lower_median(std::vector<double> samples) {
    require(!samples.empty(), "median of an empty sample");
    const std::size_t k = (samples.size() - 1) / 2;
    std::nth_element(samples.begin(), samples.begin() + k, samples.end());
    return samples[k];
}

CenterEstimate estimate_center(const std::vector<double>& samples, CenterMode mode, std::uint64_t bootstrap_seed) {
    require(!samples.empty(), "center of an empty sample");
    const double n = static_cast<double>(samples.size());
    if (mode == CenterMode::Mean) {
        double mean = 0.0;
        for (double v : samples) mean += v;
        mean /= n;
        double ss = 0.0;
        for (double v : samples) ss += (v - mean) * (v - mean);
        const double se = samples.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
        return {mean, se};
    }
    const double median = lower_median(samples);
    constexpr int kResamples = 200;
    RngStream rng(bootstrap_seed, 0xB0075742ULL);
    std::vector<double> resample(samples.size());
    std::vector<double> medians;
    for (int r = 0; r < kResamples; ++r) {
        for (auto& v : resample) {
            const auto idx = static_cast<std::size_t>(uniform01(rng) * n);
            v = samples[std::min(idx, samples.size() - 1)];
        }
        medians.push_back(lower_median(resample));
    }
    double mean = 0.0;
    for (double m : medians) mean += m;
    mean /= kResamples;
    double ss = 0.0;
    for (double m : medians) ss += (m - mean) * (m - mean);
    return {median, std::sqrt(ss / (kResamples - 1))};
}

}  // namespace stabledev
