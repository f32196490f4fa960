#include "stabledev/sampler.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "stabledev/errors.hpp"

namespace stabledev {

namespace {

void add_scaled(Vec& acc, const Vec& direction, double factor) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += factor * direction[i];
}

void require_alpha_not_one(double alpha) {
    if (std::abs(alpha - 1.0) < 1e-6) throw UnsupportedRegime("alpha = 1 is not supported");
}

long poisson(double mean, RngStream& rng) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<long> dist(mean);
    return dist(rng);
}

}  // namespace

double pareto_radius_from_uniform(double R, double alpha, double u) { return R * std::pow(u, -1.0 / alpha); }

double sample_pareto_radius(double R, double alpha, RngStream& rng) {
    require(R > 0.0, "R must be positive");
    require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0, 2)");
    return pareto_radius_from_uniform(R, alpha, uniform01(rng));
}

AtomPicker::AtomPicker(const SpectralMeasure& spectral) {
    double acc = 0.0;
    for (const auto& a : spectral.atoms()) {
        acc += a.weight;
        cumulative_.push_back(acc);
    }
}

std::size_t AtomPicker::pick(RngStream& rng) const {
    const double target = uniform01(rng) * cumulative_.back();
    for (std::size_t i = 0; i + 1 < cumulative_.size(); ++i)
        if (target < cumulative_[i]) return i;
    return cumulative_.size() - 1;
}

ZRDraw sample_Z_R_with_count(const StableModel& model, double R, RngStream& rng) {
    const double mass = tail_mass(model, R);
    ZRDraw out{Vec(model.dimension(), 0.0), poisson(mass, rng)};
    if (out.count == 0) return out;
    const AtomPicker picker(model.spectral);
    for (long i = 0; i < out.count; ++i) {
        const auto& atom = model.spectral.atoms()[picker.pick(rng)];
        add_scaled(out.value, atom.direction, sample_pareto_radius(R, model.alpha, rng));
    }
    return out;
}

Vec sample_Z_R(const StableModel& model, double R, RngStream& rng) {
    return sample_Z_R_with_count(model, R, rng).value;
}

double skewed_stable_scale(double weight, double alpha) {
    require_alpha_not_one(alpha);
    return std::pow(-weight * std::tgamma(-alpha) * std::cos(std::numbers::pi * alpha / 2.0), 1.0 / alpha);
}

double sample_standard_skewed_stable(double alpha, RngStream& rng) {
    require_alpha_not_one(alpha);
    const double t = std::tan(std::numbers::pi * alpha / 2.0);
    const double b = std::atan(t) / alpha;
    const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
    const double v = std::numbers::pi * (uniform01(rng) - 0.5);
    const double w = standard_exponential(rng);
    const double av = alpha * (v + b);
    return s * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
}

Vec sample_stable_vector(const StableModel& model, RngStream& rng) {
    require_alpha_not_one(model.alpha);
    Vec x = model.shift_or_zero();
    for (const auto& atom : model.spectral.atoms()) {
        const double s = skewed_stable_scale(atom.weight, model.alpha) * sample_standard_skewed_stable(model.alpha, rng);
        add_scaled(x, atom.direction, s + atom.weight / (model.alpha - 1.0));
    }
    return x;
}

double discarded_second_moment(const Law& law, double eps_in) {
    validate_law(law);
    require(eps_in >= 0.0, "eps_in must be non-negative");
    return law.sigma_bar * std::pow(eps_in, 2.0 - law.alpha) / (2.0 - law.alpha);
}

YRSampler::YRSampler(const StableModel& model, double R, double eps_in, long shell_exact_limit)
    : model_(model), alpha_(model.alpha), shell_exact_limit_(shell_exact_limit) {
    require_alpha_not_one(alpha_);
    require(R > 0.0 && std::isfinite(R), "R must be positive and finite");
    require(eps_in > 0.0 && eps_in < R, "eps_in must lie in (0, R)");
    require(shell_exact_limit >= 1, "shell exact limit must be >= 1");
    discarded_second_moment_ = stabledev::discarded_second_moment(model.law(), eps_in);

    drift_ = model.shift_or_zero();
    if (eps_in < 1.0) {
        const double comp = (1.0 - std::pow(eps_in, 1.0 - alpha_)) / (1.0 - alpha_);
        for (const auto& atom : model.spectral.atoms()) add_scaled(drift_, atom.direction, -atom.weight * comp);
    }

    const double a = alpha_;
    for (double lo = eps_in; lo < R;) {
        const double hi = std::min(2.0 * lo, R);
        Shell s;
        s.inner_pow = std::pow(lo, -a);
        s.span = s.inner_pow - std::pow(hi, -a);
        const double mass = s.span / a;  // per unit weight
        const double m1 = (std::pow(hi, 1.0 - a) - std::pow(lo, 1.0 - a)) / (1.0 - a) / mass;
        const double m2 = (std::pow(hi, 2.0 - a) - std::pow(lo, 2.0 - a)) / (2.0 - a) / mass;
        s.mean_radius = m1;
        s.sd_radius = std::sqrt(std::max(0.0, m2 - m1 * m1));
        for (const auto& atom : model.spectral.atoms()) s.mean_count.push_back(atom.weight * mass);
        shells_.push_back(std::move(s));
        lo = hi;
    }
}

double YRSampler::expected_jump_count() const {
    double total = 0.0;
    for (const auto& s : shells_)
        for (double m : s.mean_count) total += m;
    return total;
}

Vec YRSampler::draw(RngStream& rng) const {
    Vec y = drift_;
    const auto& atoms = model_.spectral.atoms();
    std::normal_distribution<double> normal;
    for (const auto& s : shells_) {
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            const long count = poisson(s.mean_count[j], rng);
            if (count == 0) continue;
            double sum = 0.0;
            if (count <= shell_exact_limit_) {
                for (long i = 0; i < count; ++i)
                    sum += std::pow(s.inner_pow - uniform01(rng) * s.span, -1.0 / alpha_);
            } else {
                sum = count * s.mean_radius + std::sqrt(static_cast<double>(count)) * s.sd_radius * normal(rng);
            }
            add_scaled(y, atoms[j].direction, sum);
        }
    }
    return y;
}

Vec sample_Y_R(const StableModel& model, double R, double eps_in, RngStream& rng, long shell_exact_limit) {
    return YRSampler(model, R, eps_in, shell_exact_limit).draw(rng);
}

double annulus_mass(const Law& law, double eps_in, double R) {
    validate_law(law);
    require(eps_in > 0.0, "the annulus mass is infinite for eps_in = 0");
    require(R > eps_in, "R must exceed eps_in");
    const double outer = std::isinf(R) ? 0.0 : std::pow(R, -law.alpha);
    return law.sigma_bar * (std::pow(eps_in, -law.alpha) - outer) / law.alpha;
}

double annulus_radius_from_uniform(double eps_in, double R, double alpha, double u) {
    const double inner = std::pow(eps_in, -alpha);
    const double outer = std::isinf(R) ? 0.0 : std::pow(R, -alpha);
    return std::pow(inner - u * (inner - outer), -1.0 / alpha);
}

Configuration sample_config(const StableModel& model, double R, double eps_in, RngStream& rng) {
    require(eps_in > 0.0, "eps_in = 0 gives infinitely many points: nu is infinite near the origin");
    require(R > eps_in, "R must exceed eps_in");
    Configuration cfg{{}, eps_in, R};
    const long count = poisson(annulus_mass(model.law(), eps_in, R), rng);
    const AtomPicker picker(model.spectral);
    cfg.points.reserve(count);
    for (long i = 0; i < count; ++i) {
        const auto& atom = model.spectral.atoms()[picker.pick(rng)];
        const double r = annulus_radius_from_uniform(eps_in, R, model.alpha, uniform01(rng));
        Vec p(atom.direction.size());
        for (std::size_t k = 0; k < p.size(); ++k) p[k] = r * atom.direction[k];
        cfg.points.push_back(std::move(p));
    }
    return cfg;
}

}  // namespace stabledev
