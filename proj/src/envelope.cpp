#include "stabledev/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "stabledev/bounds_mean.hpp"
#include "stabledev/errors.hpp"

namespace stabledev {

EnvelopeGrid EnvelopeGrid::defaults() {
    EnvelopeGrid g;
    for (int n = 2; n <= 30; ++n) g.n_values.push_back(n);
    g.deltas = {1.0, 0.1, 0.01};
    g.regimes = {Regime::SmallX, Regime::IntermediateV1, Regime::IntermediateV2};
    return g;
}

std::vector<BoundCertificate> envelope_candidates(const Law& law, const EnvelopeGrid& grid) {
    require(!grid.n_values.empty(), "envelope grid needs n values");
    std::vector<BoundCertificate> out;
    auto wants = [&](Regime r) { return std::find(grid.regimes.begin(), grid.regimes.end(), r) != grid.regimes.end(); };
    for (int n : grid.n_values) {
        if (wants(Regime::SmallX)) {
            try {
                const SmallXWindow w = small_x_lambda_window(n, law);
                if (w.feasible)
                    for (double lambda : w.quantiles(grid.lambda_count))
                        out.push_back(small_x_certificate(n, lambda, law));
            } catch (const DomainError&) {
            }
        }
        if (wants(Regime::IntermediateV1)) {
            for (double delta : grid.deltas) {
                const double eps = grid.eps_factor * intermediate_v1_threshold(n, delta, law.alpha);
                out.push_back(intermediate_v1_certificate(n, delta, eps, law));
            }
        }
        if (wants(Regime::IntermediateV2)) {
            const double eps = grid.eps_factor * intermediate_v2_threshold(n, law.alpha);
            out.push_back(intermediate_v2_certificate(n, eps, law));
        }
    }
    return out;
}

EnvelopeResult envelope(double x, const std::vector<BoundCertificate>& candidates, int nearest_count) {
    EnvelopeResult result;
    std::vector<NearbyRange> nearby;
    for (const auto& cert : candidates) {
        if (!cert.applicable()) continue;
        if (cert.valid_x.contains(x)) {
            const double v = cert.evaluate(x);
            if (!result.winner || v < result.value) {
                result.winner = cert;
                result.value = v;
            }
        } else {
            const double d = x < cert.valid_x.lo ? cert.valid_x.lo - x : x - cert.valid_x.hi;
            nearby.push_back({cert.regime, cert.valid_x, std::abs(d)});
        }
    }
    if (!result.winner) {
        std::sort(nearby.begin(), nearby.end(),
                  [](const NearbyRange& a, const NearbyRange& b) { return a.distance < b.distance; });
        if (static_cast<int>(nearby.size()) > nearest_count) nearby.resize(nearest_count);
        result.nearest = std::move(nearby);
    }
    return result;
}

EnvelopeResult envelope(double x, const StableModel& model, const EnvelopeGrid& grid) {
    return envelope(x, envelope_candidates(model.law(), grid));
}

}  // namespace stabledev
