#pragma once

#include <string>
#include <vector>

namespace stabledev {

using Vec = std::vector<double>;

struct Atom {
    Vec direction;  // unit vector
    double weight;  // > 0
};

// Discrete spectral measure on the unit sphere. The total mass is cached and
// revalidated against the atom weights on construction.
class SpectralMeasure {
public:
    SpectralMeasure() = default;
    explicit SpectralMeasure(std::vector<Atom> atoms);

    // 2d atoms at +-e_i, each carrying mass / (2d).
    static SpectralMeasure symmetric_axes(int dimension, double mass);

    const std::vector<Atom>& atoms() const { return atoms_; }
    double total_mass() const { return total_mass_; }
    int dimension() const { return dimension_; }

private:
    std::vector<Atom> atoms_;
    double total_mass_ = 0.0;
    int dimension_ = 0;
};

// The two scalars every bound depends on.
struct Law {
    double alpha;
    double sigma_bar;
};

struct StableModel {
    double alpha = 1.5;
    SpectralMeasure spectral;
    Vec shift;  // empty means zero

    StableModel() = default;
    StableModel(double alpha, SpectralMeasure spectral, Vec shift = {});

    int dimension() const { return spectral.dimension(); }
    double sigma_bar() const { return spectral.total_mass(); }
    Law law() const { return {alpha, sigma_bar()}; }
    Vec shift_or_zero() const;
};

void validate_law(const Law& law);
void require_alpha_above_one(double alpha, const std::string& what);

// nu(||u|| > R) = sigma_bar / (alpha R^alpha).
double tail_mass(const Law& law, double R);
double tail_mass(const StableModel& model, double R);

// P(Z_R != 0) = 1 - exp(-tail_mass).
double prob_tail_nonzero(const Law& law, double R);

// int_{B(0,R)} ||u||^k nu(du) = sigma_bar R^{k-alpha} / (k - alpha).
double truncated_norm_moment(const Law& law, int k, double R);
double truncated_norm_moment(const StableModel& model, int k, double R);

struct MeanSandwich {
    double lower;
    double upper;
};

// Bounds on E||Z_R|| for alpha > 1.
MeanSandwich tail_norm_mean_bounds(const Law& law, double R);
MeanSandwich tail_norm_mean_bounds(const StableModel& model, double R);

}  // namespace stabledev
