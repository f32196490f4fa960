#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stabledev {

enum class Regime {
    TruncatedLemma,
    SmallX,
    SmallXParameterFree,
    IntermediateV1,
    IntermediateV2,
    MedianV1,
    MedianV2,
    MedianSmallX,
    GaussianLimit,
};

std::string to_string(Regime regime);
Regime regime_from_string(const std::string& name);
const std::vector<Regime>& all_regimes();

// Median regimes are centred at a median; every other regime at the mean.
bool is_median_regime(Regime regime);

enum class GammaVariant { Linear, Exact };
std::string to_string(GammaVariant gamma);
GammaVariant gamma_from_string(const std::string& name);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = false;
    bool hi_closed = false;

    static Interval empty_interval() { return {1.0, 0.0, false, false}; }
    bool empty() const;
    bool contains(double x) const;
};

struct BoundValue {
    double value;
    bool in_range;
};

// A bound together with the parameters that produced it and the x-range on
// which it is proved. `formula` is the raw closed form; `evaluate` caps it
// at 1 (a probability bound above 1 is vacuous but still true).
struct BoundCertificate {
    Regime regime = Regime::TruncatedLemma;
    std::vector<std::pair<std::string, double>> params;
    Interval valid_x = Interval::empty_interval();
    std::optional<GammaVariant> gamma;
    std::vector<std::string> notes;
    std::function<double(double)> formula;

    bool applicable() const { return !valid_x.empty(); }
    double evaluate(double x) const;
    // Evaluates with an explicit out-of-range flag instead of refusing.
    BoundValue at(double x) const;

    void set(const std::string& name, double value);
    std::optional<double> find(const std::string& name) const;
    double param(const std::string& name) const;  // throws DomainError when absent
};

// A certificate evaluated at one point.
struct PointBound {
    BoundCertificate certificate;
    double x = 0.0;
    double value = 1.0;
    bool in_range = false;
};

PointBound point_bound(BoundCertificate certificate, double x);

}  // namespace stabledev
