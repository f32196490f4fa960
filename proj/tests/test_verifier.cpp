#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include <json.hpp>

#include "stabledev/bounds_mean.hpp"
#include "stabledev/bounds_median.hpp"
#include "stabledev/errors.hpp"
#include "stabledev/report_io.hpp"
#include "stabledev/test_functions.hpp"
#include "stabledev/verifier.hpp"

using namespace stabledev;

namespace {

StableModel plane_model() { return StableModel(1.5, SpectralMeasure::symmetric_axes(2, 2.0)); }

BoundCertificate v1_certificate(int n) {
    return intermediate_v1_certificate(n, 1.0, kAutoEpsFactor * intermediate_v1_threshold(n, 1.0, 1.5),
                                       plane_model().law());
}

VerifyOptions small_run(int workers) {
    VerifyOptions o;
    o.budget = 20000;
    o.seed = 7;
    o.grid_points = 5;
    o.workers = workers;
    o.chunk_size = 3000;
    return o;
}

}  // namespace

TEST(TestFunctions, RegisteredFunctionsAreLipschitz) {
    for (const auto& f : {coordinate_function(2, 0), linear_function({0.6, 0.8}), euclidean_norm(), max_coordinate(),
                          distance_to_ball({0.0, 0.0}, 1.0)})
        EXPECT_TRUE(check_lipschitz(f, 2, 2000).pass) << f.name;
}

TEST(TestFunctions, RejectsSteepFunction) {
    TestFunction steep{"steep", [](const Vec& x) { return 2.0 * x[0]; }, 1.0, {}};
    const auto r = check_lipschitz(steep, 2, 2000);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.worst_excess, 0.0);
}

TEST(TestFunctions, LinearNeedsUnitDirection) { EXPECT_THROW(linear_function({1.0, 1.0}), DomainError); }

TEST(TestFunctions, CappedSumDifferenceBound) {
    const StableModel m(0.8, SpectralMeasure::symmetric_axes(2, 1.0));
    EXPECT_TRUE(check_difference_bound(capped_sum(1.0), m, 500).pass);
    TestFunctional doubled{"doubled", [](const Configuration& c) { return 2.0 * c.points.size(); }, true};
    EXPECT_FALSE(check_difference_bound(doubled, m, 500).pass);
}

TEST(VerificationGrid, StrictlyInsideTheRange) {
    const auto g = verification_grid({2.0, 8.0, true, true}, 4);
    ASSERT_EQ(g.size(), 4u);
    for (double x : g) {
        EXPECT_GE(x, 2.0);
        EXPECT_LE(x, 8.0);
    }
    const auto from_zero = verification_grid({0.0, 10.0, false, true}, 3);
    EXPECT_GT(from_zero.front(), 0.0);
    EXPECT_LT(from_zero.front(), 10.0);
}

TEST(Verifier, ReportDoesNotDependOnWorkerCount) {
    const auto cert = v1_certificate(10);
    const auto a = verify_certificate(cert, coordinate_function(2, 0), plane_model(), small_run(1));
    const auto b = verify_certificate(cert, coordinate_function(2, 0), plane_model(), small_run(3));
    EXPECT_EQ(report_json(a), report_json(b));
    EXPECT_EQ(a.center_mode, "exact-mean");
}

TEST(Verifier, ZeroBoundInjectionFails) {
    BoundCertificate cert = v1_certificate(10);
    const auto original = cert.formula;
    cert.formula = [original](double x) { return original(x) * 0.0; };
    const auto r = verify_certificate(cert, coordinate_function(2, 0), plane_model(), small_run(1));
    EXPECT_FALSE(r.overall_pass);
}

TEST(Verifier, ShiftedSamplesFail) {
    auto opt = small_run(1);
    opt.shift = 10.0;
    const auto r = verify_certificate(v1_certificate(3), coordinate_function(2, 0), plane_model(), opt);
    EXPECT_FALSE(r.overall_pass);
}

TEST(Verifier, RefusesInvalidRequests) {
    auto opt = small_run(1);
    const auto empty = truncated_lipschitz_certificate(1.0, 10, 1e-3, Law{1.9, 0.1});
    EXPECT_THROW(verify_certificate(empty, coordinate_function(2, 0), plane_model(), opt), DomainError);
    opt.budget = 100;
    EXPECT_THROW(verify_certificate(v1_certificate(10), coordinate_function(2, 0), plane_model(), opt), DomainError);
    EXPECT_THROW(verify_certificate(v1_certificate(10), capped_sum(1.0), plane_model(), small_run(1)), DomainError);
}

TEST(ReportIo, CsvHeaderAndJsonFields) {
    const auto r = verify_certificate(v1_certificate(10), coordinate_function(2, 0), plane_model(), small_run(1));
    std::ostringstream csv;
    write_report_csv(r, csv);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "x,empirical_tail,ci_lo,ci_hi,bound,margin,pass");
    const auto j = nlohmann::json::parse(report_json(r));
    for (const char* key : {"grid", "sample_count", "seed", "regime", "target", "certificate_params", "valid_lo",
                            "valid_hi", "center_mode", "center", "strict", "overall_pass"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["grid"].size(), 5u);
}

TEST(ReportIo, NumberFormatting) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}
