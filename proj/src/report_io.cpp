#include "stabledev/report_io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace stabledev {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_report_csv(const VerificationReport& r, std::ostream& out) {
    out << "x,empirical_tail,ci_lo,ci_hi,bound,margin,pass\n";
    for (const auto& row : r.grid) {
        out << format_number(row.x) << ',' << format_number(row.empirical_tail) << ',' << format_number(row.ci_lo)
            << ',' << format_number(row.ci_hi) << ',' << format_number(row.bound) << ',' << format_number(row.margin)
            << ',' << (row.pass ? "true" : "false") << '\n';
    }
}

namespace {

// JSON numbers cannot be nan/inf; those become strings.
nlohmann::ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

}  // namespace

std::string report_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (const auto& row : r.grid) {
        grid.push_back({{"x", number(row.x)},
                        {"empirical_tail", number(row.empirical_tail)},
                        {"ci_lo", number(row.ci_lo)},
                        {"ci_hi", number(row.ci_hi)},
                        {"bound", number(row.bound)},
                        {"margin", number(row.margin)},
                        {"pass", row.pass},
                        {"exceedances", row.exceedances}});
    }
    j["grid"] = grid;
    j["sample_count"] = r.sample_count;
    j["seed"] = r.seed;
    j["regime"] = r.regime;
    j["target"] = r.target;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.certificate_params) params[k] = number(v);
    j["certificate_params"] = params;
    if (!r.gamma.empty()) j["gamma"] = r.gamma;
    j["valid_lo"] = number(r.valid_lo);
    j["valid_hi"] = number(r.valid_hi);
    j["center_mode"] = r.center_mode;
    j["center"] = number(r.center);
    j["center_stderr"] = number(r.center_stderr);
    j["strict"] = r.strict;
    j["shift"] = number(r.shift);
    nlohmann::ordered_json sampling = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.sampling) sampling[k] = number(v);
    j["sampling"] = sampling;
    j["overall_pass"] = r.overall_pass;
    return j.dump(2) + "\n";
}

}  // namespace stabledev
