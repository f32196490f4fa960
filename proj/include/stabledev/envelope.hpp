#pragma once

#include <optional>
#include <vector>

#include "stabledev/certificate.hpp"
#include "stabledev/levy.hpp"

namespace stabledev {

struct EnvelopeGrid {
    std::vector<int> n_values;
    std::vector<double> deltas;
    double eps_factor = 1.05;  // eps = factor * regime threshold
    int lambda_count = 5;      // interior points of the small-x lambda window
    std::vector<Regime> regimes;

    // n in 2..30, delta in {1, 0.1, 0.01}, small-x and both intermediate regimes.
    static EnvelopeGrid defaults();
};

// Every certificate the grid produces. Parameter tuples that violate a
// precondition (infeasible small-x, missing roots) are skipped.
std::vector<BoundCertificate> envelope_candidates(const Law& law, const EnvelopeGrid& grid);

struct NearbyRange {
    Regime regime;
    Interval range;
    double distance;
};

struct EnvelopeResult {
    std::optional<BoundCertificate> winner;  // empty when no range contains x
    double value = 1.0;
    std::vector<NearbyRange> nearest;  // filled when inapplicable
    bool applicable() const { return winner.has_value(); }
};

EnvelopeResult envelope(double x, const std::vector<BoundCertificate>& candidates, int nearest_count = 3);
EnvelopeResult envelope(double x, const StableModel& model, const EnvelopeGrid& grid);

}  // namespace stabledev
