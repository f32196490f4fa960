#include "stabledev/certificate.hpp"

#include <algorithm>
#include <cmath>

#include "stabledev/errors.hpp"

namespace stabledev {

namespace {

const std::vector<std::pair<Regime, std::string>>& regime_names() {
    static const std::vector<std::pair<Regime, std::string>> names = {
        {Regime::TruncatedLemma, "truncated-lemma"},
        {Regime::SmallX, "small-x"},
        {Regime::SmallXParameterFree, "small-x-parameter-free"},
        {Regime::IntermediateV1, "intermediate-v1"},
        {Regime::IntermediateV2, "intermediate-v2"},
        {Regime::MedianV1, "median-v1"},
        {Regime::MedianV2, "median-v2"},
        {Regime::MedianSmallX, "median-small-x"},
        {Regime::GaussianLimit, "gaussian-limit"},
    };
    return names;
}

}  // namespace

std::string to_string(Regime regime) {
    for (const auto& [r, name] : regime_names())
        if (r == regime) return name;
    return "unknown";
}

Regime regime_from_string(const std::string& name) {
    for (const auto& [r, n] : regime_names())
        if (n == name) return r;
    throw DomainError("unknown regime '" + name + "'");
}

const std::vector<Regime>& all_regimes() {
    static const std::vector<Regime> regimes = [] {
        std::vector<Regime> out;
        for (const auto& entry : regime_names()) out.push_back(entry.first);
        return out;
    }();
    return regimes;
}

bool is_median_regime(Regime regime) {
    return regime == Regime::MedianV1 || regime == Regime::MedianV2 || regime == Regime::MedianSmallX;
}

std::string to_string(GammaVariant gamma) { return gamma == GammaVariant::Linear ? "linear" : "exact"; }

GammaVariant gamma_from_string(const std::string& name) {
    if (name == "linear") return GammaVariant::Linear;
    if (name == "exact") return GammaVariant::Exact;
    throw DomainError("unknown gamma variant '" + name + "' (expected linear or exact)");
}

bool Interval::empty() const {
    if (std::isnan(lo) || std::isnan(hi)) return true;
    if (lo < hi) return false;
    return !(lo == hi && lo_closed && hi_closed);
}

bool Interval::contains(double x) const {
    if (empty()) return false;
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

double BoundCertificate::evaluate(double x) const {
    if (!formula) throw DomainError("certificate for " + to_string(regime) + " has no formula");
    return std::min(1.0, formula(x));
}

BoundValue BoundCertificate::at(double x) const { return {evaluate(x), valid_x.contains(x)}; }

PointBound point_bound(BoundCertificate certificate, double x) {
    const BoundValue v = certificate.at(x);
    return {std::move(certificate), x, v.value, v.in_range};
}

void BoundCertificate::set(const std::string& name, double value) {
    for (auto& p : params) {
        if (p.first == name) {
            p.second = value;
            return;
        }
    }
    params.emplace_back(name, value);
}

std::optional<double> BoundCertificate::find(const std::string& name) const {
    for (const auto& p : params)
        if (p.first == name) return p.second;
    return std::nullopt;
}

double BoundCertificate::param(const std::string& name) const {
    auto v = find(name);
    if (!v) throw DomainError("certificate has no parameter '" + name + "'");
    return *v;
}

}  // namespace stabledev
