#include "stabledev/levy.hpp"

#include <cmath>
#include <limits>

#include "stabledev/errors.hpp"

namespace stabledev {

SpectralMeasure::SpectralMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    require(!atoms_.empty(), "spectral measure needs at least one atom");
    dimension_ = static_cast<int>(atoms_.front().direction.size());
    require(dimension_ >= 1, "atom directions must have dimension >= 1");
    double sum = 0.0;
    for (const auto& a : atoms_) {
        require(static_cast<int>(a.direction.size()) == dimension_, "atom directions differ in dimension");
        require(std::isfinite(a.weight) && a.weight > 0.0, "atom weights must be positive");
        double norm2 = 0.0;
        for (double c : a.direction) norm2 += c * c;
        require(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12, "atom direction is not a unit vector");
        sum += a.weight;
    }
    total_mass_ = sum;
}

SpectralMeasure SpectralMeasure::symmetric_axes(int dimension, double mass) {
    require(dimension >= 1, "dimension must be >= 1");
    require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
    std::vector<Atom> atoms;
    const double w = mass / (2.0 * dimension);
    for (int i = 0; i < dimension; ++i) {
        for (double sign : {1.0, -1.0}) {
            Vec e(dimension, 0.0);
            e[i] = sign;
            atoms.push_back({e, w});
        }
    }
    return SpectralMeasure(std::move(atoms));
}

StableModel::StableModel(double alpha_, SpectralMeasure spectral_, Vec shift_)
    : alpha(alpha_), spectral(std::move(spectral_)), shift(std::move(shift_)) {
    require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0, 2)");
    require(spectral.dimension() >= 1, "model needs a spectral measure");
    require(shift.empty() || static_cast<int>(shift.size()) == spectral.dimension(),
            "shift dimension does not match the spectral measure");
}

Vec StableModel::shift_or_zero() const {
    return shift.empty() ? Vec(dimension(), 0.0) : shift;
}

void validate_law(const Law& law) {
    require(law.alpha > 0.0 && law.alpha < 2.0, "alpha must lie in (0, 2)");
    require(std::isfinite(law.sigma_bar) && law.sigma_bar > 0.0, "sigma_bar must be positive");
}

void require_alpha_above_one(double alpha, const std::string& what) {
    require(alpha > 1.0 && alpha < 2.0, what + " requires alpha in (1, 2)");
}

double tail_mass(const Law& law, double R) {
    validate_law(law);
    require(R > 0.0, "truncation level R must be positive");
    if (std::isinf(R)) return 0.0;
    return law.sigma_bar / (law.alpha * std::pow(R, law.alpha));
}

double tail_mass(const StableModel& model, double R) { return tail_mass(model.law(), R); }

double prob_tail_nonzero(const Law& law, double R) { return -std::expm1(-tail_mass(law, R)); }

double truncated_norm_moment(const Law& law, int k, double R) {
    validate_law(law);
    require(R > 0.0 && std::isfinite(R), "truncation level R must be positive and finite");
    require(k >= 1 && k > law.alpha, "moment order k must exceed alpha");
    return law.sigma_bar * std::pow(R, k - law.alpha) / (k - law.alpha);
}

double truncated_norm_moment(const StableModel& model, int k, double R) {
    return truncated_norm_moment(model.law(), k, R);
}

MeanSandwich tail_norm_mean_bounds(const Law& law, double R) {
    validate_law(law);
    require_alpha_above_one(law.alpha, "E||Z_R|| bounds");
    require(R > 0.0, "truncation level R must be positive");
    if (std::isinf(R)) return {0.0, 0.0};
    const double upper = law.sigma_bar / ((law.alpha - 1.0) * std::pow(R, law.alpha - 1.0));
    return {upper * std::exp(-tail_mass(law, R)), upper};
}

MeanSandwich tail_norm_mean_bounds(const StableModel& model, double R) {
    return tail_norm_mean_bounds(model.law(), R);
}

}  // namespace stabledev
