#include "stabledev/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stabledev/bounds_mean.hpp"
#include "stabledev/bounds_median.hpp"
#include "stabledev/certificate.hpp"
#include "stabledev/envelope.hpp"
#include "stabledev/errors.hpp"
#include "stabledev/levy.hpp"
#include "stabledev/parameter_free.hpp"
#include "stabledev/report_io.hpp"
#include "stabledev/rng.hpp"
#include "stabledev/roots.hpp"
#include "stabledev/sampler.hpp"
#include "stabledev/test_functions.hpp"
#include "stabledev/verifier.hpp"

namespace stabledev::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr const char* kSeedEnv = "STABLEDEV_SEED";

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(trim(text), &used);
        if (used != trim(text).size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw DomainError("cannot parse " + what + " from '" + text + "'");
    }
}

std::uint64_t default_seed() {
    const char* env = std::getenv(kSeedEnv);
    if (env == nullptr || *env == '\0') return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw DomainError(std::string(kSeedEnv) + " is not an unsigned integer: " + env);
    }
}

struct ModelArgs {
    double alpha = kNaN;
    int dimension = 2;
    std::vector<std::string> atoms;
    std::string preset;
};

struct CommonArgs {
    std::uint64_t seed = 0;
    std::string output;
    int workers = 0;
};

// Regime and parameter grid shared by bounds, regimes and verify.
struct CertArgs {
    std::vector<std::string> regimes;
    std::vector<int> n{10};
    std::vector<double> delta{1.0};
    std::string eps = "auto";
    std::string lambda = "mid";
    double R = 1.0;
    std::string gamma = "linear";
    long pf_budget = 20000;
};

StableModel build_model(const ModelArgs& m) {
    require(std::isfinite(m.alpha), "--alpha is required");
    require(m.dimension >= 1, "--dimension must be positive");
    require(m.atoms.empty() || m.preset.empty(), "--atom and --preset are mutually exclusive");
    SpectralMeasure spectral;
    if (!m.atoms.empty()) {
        std::vector<Atom> atoms;
        for (const auto& text : m.atoms) {
            const auto colon = text.rfind(':');
            require(colon != std::string::npos, "atom '" + text + "' must look like x,y,...:weight");
            Atom a;
            for (const auto& c : split(text.substr(0, colon), ','))
                a.direction.push_back(parse_double(c, "atom coordinate"));
            a.weight = parse_double(text.substr(colon + 1), "atom weight");
            require(static_cast<int>(a.direction.size()) == m.dimension,
                    "atom '" + text + "' does not match --dimension " + std::to_string(m.dimension));
            atoms.push_back(std::move(a));
        }
        spectral = SpectralMeasure(std::move(atoms));
    } else {
        double mass = 1.0;
        if (!m.preset.empty()) {
            const auto colon = m.preset.find(':');
            require(colon != std::string::npos && m.preset.substr(0, colon) == "symmetric-axes",
                    "unknown preset '" + m.preset + "' (expected symmetric-axes:mass)");
            mass = parse_double(m.preset.substr(colon + 1), "preset mass");
        }
        spectral = SpectralMeasure::symmetric_axes(m.dimension, mass);
    }
    return StableModel(m.alpha, std::move(spectral));
}

// lo:hi:count, geometric spacing; count 1 gives lo alone.
std::vector<double> parse_x_grid(const std::string& spec) {
    const auto parts = split(spec, ':');
    require(parts.size() == 3, "--x-grid must be lo:hi:count");
    const double lo = parse_double(parts[0], "x-grid lower end");
    const double hi = parse_double(parts[1], "x-grid upper end");
    const double count = parse_double(parts[2], "x-grid count");
    require(lo > 0.0 && hi >= lo, "--x-grid needs 0 < lo <= hi");
    require(count >= 1 && count == std::floor(count) && count <= 1e6, "--x-grid count must be a positive integer");
    const int k = static_cast<int>(count);
    std::vector<double> xs;
    for (int i = 0; i < k; ++i)
        xs.push_back(k == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (k - 1)));
    return xs;
}

std::optional<double> auto_eps(Regime regime, int n, double delta, double alpha) {
    switch (regime) {
        case Regime::IntermediateV1: return kAutoEpsFactor * intermediate_v1_threshold(n, delta, alpha);
        case Regime::IntermediateV2: return kAutoEpsFactor * intermediate_v2_threshold(n, alpha);
        case Regime::MedianV1:
        case Regime::MedianV2: return kAutoEpsFactor * median_threshold(n, alpha);
        case Regime::SmallXParameterFree: return 0.05;
        default: return std::nullopt;
    }
}

double resolve_eps(const std::string& spec, Regime regime, int n, double delta, double alpha) {
    if (spec == "auto") {
        const auto e = auto_eps(regime, n, delta, alpha);
        return e ? *e : kNaN;
    }
    return parse_double(spec, "--eps");
}

double resolve_lambda(const std::string& spec, int n, const Law& law) {
    if (spec == "mid") return small_x_lambda_window(n, law).midpoint();
    return parse_double(spec, "--lambda");
}

BoundCertificate make_certificate(Regime regime, int n, double delta, const CertArgs& args,
                                  const StableModel& model, std::uint64_t seed) {
    const Law law = model.law();
    const GammaVariant gamma = gamma_from_string(args.gamma);
    const double eps = resolve_eps(args.eps, regime, n, delta, law.alpha);
    switch (regime) {
        case Regime::TruncatedLemma: return truncated_lipschitz_certificate(args.R, n, delta, law);
        case Regime::SmallX: return small_x_certificate(n, resolve_lambda(args.lambda, n, law), law);
        case Regime::SmallXParameterFree:
            return small_x_parameterfree_certificate(n, eps, model, args.pf_budget, seed);
        case Regime::IntermediateV1: return intermediate_v1_certificate(n, delta, eps, law);
        case Regime::IntermediateV2: return intermediate_v2_certificate(n, eps, law);
        case Regime::MedianV1: return median_v1_certificate(n, eps, law, gamma);
        case Regime::MedianV2: return median_v2_certificate(n, eps, law, gamma);
        case Regime::MedianSmallX: return median_small_x_certificate(n, resolve_lambda(args.lambda, n, law), law);
        case Regime::GaussianLimit: break;
    }
    throw DomainError("gaussian-limit is a sweep, not a certificate; use the gaussian-limit subcommand");
}

std::vector<Regime> parse_regimes(const std::vector<std::string>& names, std::vector<Regime> fallback) {
    if (names.empty()) return fallback;
    std::vector<Regime> out;
    for (const auto& name : names) out.push_back(regime_from_string(name));
    return out;
}

std::string num(double v) { return format_number(v); }

std::string param_or_nan(const BoundCertificate& cert, const std::string& name) {
    const auto v = cert.find(name);
    return v ? num(*v) : "nan";
}

std::string range_lo(const BoundCertificate& cert) { return cert.applicable() ? num(cert.valid_x.lo) : "nan"; }
std::string range_hi(const BoundCertificate& cert) { return cert.applicable() ? num(cert.valid_x.hi) : "nan"; }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError("cannot open output file '" + path + "'");
    file << text;
    if (!file) throw DomainError("failed writing output file '" + path + "'");
}

void add_model_options(CLI::App* app, ModelArgs& m) {
    app->add_option("--alpha", m.alpha, "stability index in (0, 2)");
    app->add_option("--dimension", m.dimension, "ambient dimension")->capture_default_str();
    app->add_option("--atom", m.atoms, "spectral atom 'x,y,...:weight' (repeatable)")->take_all();
    app->add_option("--preset", m.preset, "spectral preset 'symmetric-axes:mass' (default symmetric-axes:1)");
}

void add_common_options(CLI::App* app, CommonArgs& c) {
    app->add_option("--seed", c.seed, std::string("RNG seed (default from ") + kSeedEnv + ", else 0)");
    app->add_option("--output", c.output, "output file (verify: path prefix)");
    app->add_option("--workers", c.workers, "sampling threads, 0 for all cores")->capture_default_str();
}

void add_cert_options(CLI::App* app, CertArgs& a, bool multi) {
    auto* regime = app->add_option("--regime", a.regimes, "regime name");
    auto* n = app->add_option("--n", a.n, "number of summands n")->capture_default_str();
    auto* delta = app->add_option("--delta", a.delta, "delta in (0, 1]")->capture_default_str();
    if (multi) {
        regime->delimiter(',');
        n->delimiter(',');
        delta->delimiter(',');
    } else {
        regime->expected(1);
        n->expected(1);
        delta->expected(1);
    }
    app->add_option("--eps", a.eps, "eps value or 'auto'")->capture_default_str();
    app->add_option("--lambda", a.lambda, "small-x lambda or 'mid'")->capture_default_str();
    app->add_option("--R", a.R, "truncation level for the truncated regime")->capture_default_str();
    app->add_option("--gamma", a.gamma, "median remainder: linear or exact")->capture_default_str();
    app->add_option("--pf-budget", a.pf_budget, "Monte Carlo draws per count for the parameter-free oracle")
        ->capture_default_str();
}

struct Config {
    std::vector<std::pair<std::string, std::string>> entries;
};

// Flat key=value file; '#' starts a comment.
Config read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read config file '" + path + "'");
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw DomainError(path + ":" + std::to_string(lineno) + ": empty key");
        cfg.entries.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return cfg;
}

struct Parsed {
    ModelArgs model;
    CommonArgs common;
    CertArgs cert;
    std::string config_path;

    // sample
    std::string kind = "stable";
    double eps_in = 0.0;
    long count = 1000;
    double sample_R = 1.0;

    // verify
    std::string target = "coordinate:1";
    long budget = 1000000;
    bool strict = false;
    double shift = 0.0;
    int grid_points = 20;
    double config_R = 0.0;

    // bounds, gaussian-limit
    std::string x_grid;
    std::vector<double> alphas{1.9, 1.99, 1.999};
    int gl_n = 10;
    double gl_delta = 1e-3;
    std::string gl_eps = "auto";
    bool no_envelope = false;

    std::string roots_eps;  // h roots are printed only when set
    bool n_given = false;
};

struct AppSet {
    CLI::App app{"Certified concentration bounds for stable laws", "stabledev"};
    CLI::App* bounds = nullptr;
    CLI::App* roots = nullptr;
    CLI::App* sample = nullptr;
    CLI::App* verify = nullptr;
    CLI::App* gaussian = nullptr;
    CLI::App* regimes = nullptr;

    explicit AppSet(Parsed& p) {
        app.require_subcommand(1);
        app.set_help_all_flag("--help-all");

        bounds = app.add_subcommand("bounds", "evaluate certificates and their envelope on an x grid");
        add_model_options(bounds, p.model);
        add_common_options(bounds, p.common);
        add_cert_options(bounds, p.cert, true);
        bounds->add_option("--x-grid", p.x_grid, "lo:hi:count, geometric (required)");
        bounds->add_flag("--no-envelope", p.no_envelope, "omit the envelope rows");

        roots = app.add_subcommand("roots", "print every solved constant with its residual");
        add_model_options(roots, p.model);
        add_common_options(roots, p.common);
        roots->add_option("--n", p.cert.n, "number of summands n")->expected(1)->capture_default_str();
        roots->add_option("--delta", p.cert.delta, "delta in (0, 1]")->expected(1)->capture_default_str();
        roots->add_option("--eps", p.roots_eps, "eps for the h roots (number or auto)");
        roots->add_option("--lambda", p.cert.lambda, "small-x lambda or 'mid'");

        sample = app.add_subcommand("sample", "draw samples to CSV");
        add_model_options(sample, p.model);
        add_common_options(sample, p.common);
        sample->add_option("--kind", p.kind, "stable, z-r, y-r or config")->capture_default_str();
        sample->add_option("--R", p.sample_R, "truncation level (config: outer radius, may be inf)")
            ->capture_default_str();
        sample->add_option("--eps-in", p.eps_in, "inner radius for y-r and config (default 1e-3 R)");
        sample->add_option("--count", p.count, "number of draws")->capture_default_str();

        verify = app.add_subcommand("verify", "check one certificate against Monte Carlo tails");
        add_model_options(verify, p.model);
        add_common_options(verify, p.common);
        add_cert_options(verify, p.cert, false);
        verify->add_option("--target", p.target,
                           "coordinate:i, linear:v1,v2,..., norm, max-coordinate, distance-to-ball:r, capped-sum:K")
            ->capture_default_str();
        verify->add_option("--budget", p.budget, "number of samples")->capture_default_str();
        verify->add_flag("--strict", p.strict, "require the CI upper end below the bound");
        verify->add_option("--shift", p.shift, "shift added to centred samples")->capture_default_str();
        verify->add_option("--grid-points", p.grid_points, "grid size inside the certified range")
            ->capture_default_str();
        verify->add_option("--eps-in", p.eps_in, "inner radius override for truncated sampling");
        verify->add_option("--config-R", p.config_R, "outer radius override for configurations");

        gaussian = app.add_subcommand("gaussian-limit", "sweep alpha towards 2 with sigma_bar = 2 - alpha");
        add_common_options(gaussian, p.common);
        gaussian->add_option("--alphas", p.alphas, "alpha values")->delimiter(',')->capture_default_str();
        gaussian->add_option("--n", p.gl_n, "number of summands n")->capture_default_str();
        gaussian->add_option("--delta", p.gl_delta, "delta in (0, 1]")->capture_default_str();
        gaussian->add_option("--eps", p.gl_eps, "eps value or 'auto'")->capture_default_str();
        gaussian->add_option("--x-grid", p.x_grid, "lo:hi:count, geometric (default 1:1:1)");

        regimes = app.add_subcommand("regimes", "list certified ranges per n");
        add_model_options(regimes, p.model);
        add_common_options(regimes, p.common);
        add_cert_options(regimes, p.cert, true);

        for (auto* sub : {bounds, roots, sample, verify, gaussian, regimes})
            sub->add_option("--config", p.config_path, "flat key=value file; flags win");
    }
};

void parse_argv(CLI::App& app, const std::vector<std::string>& args) {
    std::vector<const char*> argv{"stabledev"};
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
}

CLI::App* selected(AppSet& s) {
    for (auto* sub : s.app.get_subcommands()) return sub;
    return nullptr;
}

int cmd_bounds(const Parsed& p, std::ostream& out, std::ostream& err) {
    const StableModel model = build_model(p.model);
    const auto regimes =
        parse_regimes(p.cert.regimes, {Regime::SmallX, Regime::IntermediateV1, Regime::IntermediateV2});
    require(!p.x_grid.empty(), "--x-grid is required");
    const auto xs = parse_x_grid(p.x_grid);

    std::ostringstream csv;
    csv << "x,regime,bound,valid_lo,valid_hi,n,delta,eps,lambda\n";
    for (Regime regime : regimes) {
        for (int n : p.cert.n) {
            const bool uses_delta = regime == Regime::TruncatedLemma || regime == Regime::IntermediateV1;
            const std::vector<double> deltas = uses_delta ? p.cert.delta : std::vector<double>{1.0};
            for (double delta : deltas) {
                std::optional<BoundCertificate> cert;
                try {
                    cert = make_certificate(regime, n, delta, p.cert, model, p.common.seed);
                } catch (const ConvergenceError&) {
                    throw;
                } catch (const MonteCarloBudgetError&) {
                    throw;
                } catch (const DomainError& e) {
                    err << "note: " << to_string(regime) << " n=" << n << " delta=" << num(delta) << ": "
                        << e.what() << "\n";
                }
                for (double x : xs) {
                    csv << num(x) << ',' << to_string(regime) << ',';
                    if (cert) {
                        const bool in = cert->valid_x.contains(x);
                        csv << (in ? num(cert->evaluate(x)) : "nan") << ',' << range_lo(*cert) << ','
                            << range_hi(*cert) << ',' << n << ',' << param_or_nan(*cert, "delta") << ','
                            << param_or_nan(*cert, "eps") << ',' << param_or_nan(*cert, "lambda") << '\n';
                    } else {
                        csv << "nan,nan,nan," << n << ',' << (uses_delta ? num(delta) : "nan") << ",nan,nan\n";
                    }
                }
            }
        }
    }
    if (!p.no_envelope) {
        const auto candidates = envelope_candidates(model.law(), EnvelopeGrid::defaults());
        for (double x : xs) {
            const EnvelopeResult r = envelope(x, candidates);
            if (!r.winner) {
                csv << num(x) << ",envelope:none,nan,nan,nan,nan,nan,nan,nan\n";
                continue;
            }
            const BoundCertificate& w = *r.winner;
            csv << num(x) << ",envelope:" << to_string(w.regime) << ',' << num(r.value) << ',' << range_lo(w) << ','
                << range_hi(w) << ',' << param_or_nan(w, "n") << ',' << param_or_nan(w, "delta") << ','
                << param_or_nan(w, "eps") << ',' << param_or_nan(w, "lambda") << '\n';
        }
    }
    emit(csv.str(), p.common.output, out);
    return kSuccess;
}

int cmd_roots(const Parsed& p, std::ostream& out, std::ostream&) {
    require(std::isfinite(p.model.alpha), "--alpha is required");
    require(p.cert.n.size() == 1 && p.cert.delta.size() == 1, "roots takes a single --n and --delta");
    const int n = p.cert.n.front();
    const double delta = p.cert.delta.front();
    const double alpha = p.model.alpha;
    const bool has_measure = !p.model.atoms.empty() || !p.model.preset.empty();
    const Law law = has_measure ? build_model(p.model).law() : Law{alpha, 1.0};
    validate_law(law);

    std::ostringstream csv;
    csv << "name,value,residual\n";
    const UStarResult us = solve_u_star(n, alpha, delta);
    csv << "u_n," << num(us.u_n) << ',' << num(us.u_n_residual) << '\n';
    for (const auto& [k, u] : us.k_candidates) csv << "u_k[" << k << "]," << num(u) << ",0\n";
    csv << "u_star," << num(us.u_star) << ',' << num(us.argmin_k ? 0.0 : us.u_n_residual) << '\n';
    csv << "u_star_argmin_k," << (us.argmin_k ? std::to_string(*us.argmin_k) : "none") << ",0\n";

    const RootResult d0 = solve_delta0(n, alpha);
    csv << "delta0," << num(d0.value) << ',' << num(d0.residual) << '\n';

    if (!p.roots_eps.empty()) {
        const double nd = n_delta(n, delta);
        const double eps = p.roots_eps == "auto" ? kAutoEpsFactor * intermediate_v1_threshold(n, delta, alpha)
                                                 : parse_double(p.roots_eps, "--eps");
        const HRoots h = solve_h_roots(nd, alpha, eps);
        csv << "eps," << num(eps) << ",0\n";
        csv << "h_coefficient," << num(h.coefficient) << ",0\n";
        csv << "u1," << num(h.u1) << ',' << num(h.residual1) << '\n';
        csv << "u2," << num(h.u2) << ',' << num(h.residual2) << '\n';
    }
    if (alpha > 1.0) {
        const SmallXWindow w = small_x_lambda_window(n, law);
        csv << "lambda1," << num(w.lambda1) << ",0\n";
        csv << "lambda2," << num(w.lambda2) << ",0\n";
        csv << "lambda0," << num(w.lambda0) << ",0\n";
        csv << "small_x_feasible," << (w.feasible ? 1 : 0) << ",0\n";
        if (w.feasible) {
            const double lambda = resolve_lambda(p.cert.lambda, n, law);
            const RootResult u0 = solve_u0_lambda(n, alpha, lambda, law.sigma_bar);
            csv << "lambda," << num(lambda) << ",0\n";
            csv << "u0," << num(u0.value) << ',' << num(u0.residual) << '\n';
        }
    }
    emit(csv.str(), p.common.output, out);
    return kSuccess;
}

void write_vec(std::ostream& csv, const Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) csv << (i ? "," : "") << num(v[i]);
    csv << '\n';
}

int cmd_sample(const Parsed& p, std::ostream& out, std::ostream&) {
    const StableModel model = build_model(p.model);
    require(p.count >= 1, "--count must be positive");
    const int d = model.dimension();
    RngStream rng(p.common.seed, 0);
    std::ostringstream csv;
    const bool config = p.kind == "config";
    if (config) csv << "sample,";
    for (int i = 0; i < d; ++i) csv << (i ? "," : "") << 'x' << (i + 1);
    csv << '\n';

    const double eps_in = p.eps_in > 0.0 ? p.eps_in : 1e-3 * (std::isfinite(p.sample_R) ? p.sample_R : 1.0);
    if (p.kind == "stable") {
        for (long i = 0; i < p.count; ++i) write_vec(csv, sample_stable_vector(model, rng));
    } else if (p.kind == "z-r") {
        for (long i = 0; i < p.count; ++i) write_vec(csv, sample_Z_R(model, p.sample_R, rng));
    } else if (p.kind == "y-r") {
        const YRSampler sampler(model, p.sample_R, eps_in);
        for (long i = 0; i < p.count; ++i) write_vec(csv, sampler.draw(rng));
    } else if (config) {
        for (long i = 0; i < p.count; ++i) {
            const Configuration c = sample_config(model, p.sample_R, eps_in, rng);
            for (const auto& pt : c.points) {
                csv << i << ',';
                write_vec(csv, pt);
            }
        }
    } else {
        throw DomainError("unknown --kind '" + p.kind + "' (stable, z-r, y-r, config)");
    }
    emit(csv.str(), p.common.output, out);
    return kSuccess;
}

Target parse_target(const std::string& spec, int dimension) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "coordinate") {
        const double i = parse_double(arg, "coordinate index");
        require(i == std::floor(i) && i >= 1 && i <= dimension, "coordinate index must lie in 1..dimension");
        return coordinate_function(dimension, static_cast<int>(i) - 1);
    }
    if (name == "linear") {
        Vec v;
        for (const auto& c : split(arg, ',')) v.push_back(parse_double(c, "linear direction"));
        require(static_cast<int>(v.size()) == dimension, "linear direction must match --dimension");
        return linear_function(v);
    }
    if (name == "norm" && arg.empty()) return euclidean_norm();
    if (name == "max-coordinate" && arg.empty()) return max_coordinate();
    if (name == "distance-to-ball")
        return distance_to_ball(Vec(static_cast<std::size_t>(dimension), 0.0), parse_double(arg, "ball radius"));
    if (name == "capped-sum") return capped_sum(parse_double(arg, "cap"));
    throw DomainError("unknown --target '" + spec + "'");
}

int cmd_verify(const Parsed& p, std::ostream& out, std::ostream& err) {
    const StableModel model = build_model(p.model);
    require(p.cert.regimes.size() == 1, "verify needs exactly one --regime");
    const Regime regime = regime_from_string(p.cert.regimes.front());
    const Target target = parse_target(p.target, model.dimension());
    const BoundCertificate cert =
        make_certificate(regime, p.cert.n.front(), p.cert.delta.front(), p.cert, model, p.common.seed);

    VerifyOptions opt;
    opt.budget = p.budget;
    opt.seed = p.common.seed;
    opt.strict = p.strict;
    opt.shift = p.shift;
    opt.grid_points = p.grid_points;
    opt.workers = p.common.workers;
    opt.config_R = p.config_R;
    opt.eps_in = p.eps_in;
    const VerificationReport rep = verify_certificate(cert, target, model, opt);

    std::ostringstream csv;
    write_report_csv(rep, csv);
    if (p.common.output.empty()) {
        out << csv.str();
    } else {
        emit(csv.str(), p.common.output + ".csv", out);
        emit(report_json(rep), p.common.output + ".json", out);
    }
    err << "verify " << rep.regime << " on " << rep.target << ": " << (rep.overall_pass ? "pass" : "FAIL") << "\n";
    return rep.overall_pass ? kSuccess : kVerificationFailed;
}

int cmd_gaussian(const Parsed& p, std::ostream& out, std::ostream& err) {
    const auto xs = parse_x_grid(p.x_grid.empty() ? "1:1:1" : p.x_grid);
    std::ostringstream csv;
    csv << "alpha,x,bound,valid_lo,valid_hi,in_range,gaussian_nd,gaussian_limit,limiting_factor_bound\n";
    for (double alpha : p.alphas) {
        require(alpha > 1.0 && alpha < 2.0, "gaussian-limit alphas must lie in (1, 2)");
        const Law law{alpha, 2.0 - alpha};
        const double eps = p.gl_eps == "auto" ? kAutoEpsFactor * intermediate_v1_threshold(p.gl_n, p.gl_delta, alpha)
                                              : parse_double(p.gl_eps, "--eps");
        const BoundCertificate cert = intermediate_v1_certificate(p.gl_n, p.gl_delta, eps, law);
        for (const auto& note : cert.notes) err << "note: alpha=" << num(alpha) << ": " << note << "\n";
        for (double x : xs) {
            csv << num(alpha) << ',' << num(x) << ',' << num(cert.evaluate(x)) << ',' << range_lo(cert) << ','
                << range_hi(cert) << ',' << (cert.valid_x.contains(x) ? 1 : 0) << ','
                << num(gaussian_limit_bound(x, p.gl_n, p.gl_delta)) << ',' << num(gaussian_limit_curve(x)) << ','
                << num(gaussian_limiting_factor_bound(x, p.gl_n, p.gl_delta, eps, alpha)) << '\n';
        }
    }
    emit(csv.str(), p.common.output, out);
    return kSuccess;
}

int cmd_regimes(const Parsed& p, std::ostream& out, std::ostream& err) {
    const StableModel model = build_model(p.model);
    const bool above_one = model.alpha > 1.0;
    std::vector<Regime> fallback{Regime::TruncatedLemma};
    if (above_one)
        fallback.insert(fallback.end(), {Regime::SmallX, Regime::IntermediateV1, Regime::IntermediateV2,
                                         Regime::MedianSmallX});
    fallback.insert(fallback.end(), {Regime::MedianV1, Regime::MedianV2});
    const auto regimes = parse_regimes(p.cert.regimes, fallback);

    std::vector<int> ns = p.cert.n;
    if (!p.n_given) {
        ns.clear();
        for (int n = 2; n <= 30; ++n) ns.push_back(n);
    }
    std::ostringstream csv;
    csv << "n,regime,delta,eps,lambda,valid_lo,valid_hi\n";
    for (int n : ns) {
        for (Regime regime : regimes) {
            const bool uses_delta = regime == Regime::TruncatedLemma || regime == Regime::IntermediateV1;
            for (double delta : uses_delta ? p.cert.delta : std::vector<double>{1.0}) {
                try {
                    const BoundCertificate c = make_certificate(regime, n, delta, p.cert, model, p.common.seed);
                    csv << n << ',' << to_string(regime) << ',' << param_or_nan(c, "delta") << ','
                        << param_or_nan(c, "eps") << ',' << param_or_nan(c, "lambda") << ',' << range_lo(c) << ','
                        << range_hi(c) << '\n';
                } catch (const ConvergenceError&) {
                    throw;
                } catch (const MonteCarloBudgetError&) {
                    throw;
                } catch (const DomainError& e) {
                    err << "note: " << to_string(regime) << " n=" << n << ": " << e.what() << "\n";
                    csv << n << ',' << to_string(regime) << ',' << (uses_delta ? num(delta) : "nan")
                        << ",nan,nan,nan,nan\n";
                }
            }
        }
    }
    emit(csv.str(), p.common.output, out);
    return kSuccess;
}

// Locates --config in the raw arguments.
std::optional<std::string> find_config(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return std::nullopt;
}

// Prepends config entries that the command line does not set, so flags win.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::string& path) {
    Parsed probe;
    AppSet first(probe);
    parse_argv(first.app, args);
    CLI::App* sub = selected(first);
    const Config cfg = read_config(path);

    std::vector<std::string> extra;
    for (const auto& [key, value] : cfg.entries) {
        if (key == "config") throw DomainError("config files cannot include other config files");
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) throw DomainError("unknown config key '" + key + "' for " + sub->get_name());
        if (opt->count() > 0) continue;
        if (opt->get_expected_max() == 0) {
            if (value == "true" || value == "1") extra.push_back("--" + key);
            else if (value != "false" && value != "0") throw DomainError("flag '" + key + "' takes true or false");
            continue;
        }
        extra.push_back("--" + key);
        extra.push_back(value);
    }
    std::vector<std::string> merged;
    const std::string name = sub->get_name();
    bool placed = false;
    for (const auto& a : args) {
        merged.push_back(a);
        if (!placed && a == name) {
            merged.insert(merged.end(), extra.begin(), extra.end());
            placed = true;
        }
    }
    return merged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Parsed p;
    AppSet s(p);
    try {
        std::vector<std::string> effective = args;
        if (const auto path = find_config(args)) effective = merge_config(args, *path);

        p.common.seed = default_seed();
        parse_argv(s.app, effective);
        CLI::App* sub = selected(s);
        const std::string name = sub->get_name();
        if (const CLI::Option* n = sub->get_option_no_throw("--n")) p.n_given = n->count() > 0;
        if (name == "bounds") return cmd_bounds(p, out, err);
        if (name == "roots") return cmd_roots(p, out, err);
        if (name == "sample") return cmd_sample(p, out, err);
        if (name == "verify") return cmd_verify(p, out, err);
        if (name == "gaussian-limit") return cmd_gaussian(p, out, err);
        if (name == "regimes") return cmd_regimes(p, out, err);
        return kUsageError;
    } catch (const CLI::Success& e) {
        s.app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ConvergenceError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const MonteCarloBudgetError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

}  // namespace stabledev::cli
