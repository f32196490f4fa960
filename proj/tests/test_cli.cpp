#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stabledev/bounds_mean.hpp"
#include "stabledev/bounds_median.hpp"
#include "stabledev/cli.hpp"

using namespace stabledev;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("stabledev_test_" + name);
}

const std::vector<std::string> kBounds{"bounds", "--alpha", "1.5", "--preset", "symmetric-axes:2", "--regime",
                                       "intermediate-v1", "--n", "10", "--eps", "auto", "--x-grid", "0.5:50:20"};

}  // namespace

TEST(Cli, BoundsHeaderAndRowCount) {
    const CliRun r = run_cli(kBounds);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "x,regime,bound,valid_lo,valid_hi,n,delta,eps,lambda");
    ASSERT_EQ(rows.size(), 41u);
    int envelope = 0;
    for (const auto& row : rows)
        if (row[1].rfind("envelope:", 0) == 0) ++envelope;
    EXPECT_EQ(envelope, 20);
}

TEST(Cli, BoundRowsRoundTrip) {
    const Law law{1.5, 2.0};
    CliRun r = run_cli({"bounds", "--alpha", "1.5", "--preset", "symmetric-axes:2", "--regime",
                     "small-x,intermediate-v1,intermediate-v2,median-v1,median-v2", "--n", "5,10,20", "--delta",
                     "1,0.5", "--x-grid", "0.5:100:40"});
    ASSERT_EQ(r.code, 0) << r.err;
    int checked = 0;
    for (const auto& row : csv_rows(r.out)) {
        if (row[0] == "x" || row[2] == "nan") continue;
        const double x = std::stod(row[0]);
        std::string regime = row[1];
        if (regime.rfind("envelope:", 0) == 0) regime = regime.substr(9);
        const int n = static_cast<int>(std::stod(row[5]));
        BoundCertificate c;
        if (regime == "small-x") c = small_x_certificate(n, std::stod(row[8]), law);
        else if (regime == "intermediate-v1") c = intermediate_v1_certificate(n, std::stod(row[6]), std::stod(row[7]), law);
        else if (regime == "intermediate-v2") c = intermediate_v2_certificate(n, std::stod(row[7]), law);
        else if (regime == "median-v1") c = median_v1_certificate(n, std::stod(row[7]), law, GammaVariant::Linear);
        else if (regime == "median-v2") c = median_v2_certificate(n, std::stod(row[7]), law, GammaVariant::Linear);
        else FAIL() << regime;
        const double expected = c.evaluate(x);
        EXPECT_NEAR(std::stod(row[2]), expected, 1e-12 * expected) << row[0] << " " << row[1];
        ++checked;
    }
    EXPECT_GT(checked, 40);
}

TEST(Cli, RootsPrintsUnWithResidual) {
    const CliRun r = run_cli({"roots", "--alpha", "1.5", "--n", "2", "--delta", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_GE(rows.size(), 2u);
    EXPECT_EQ(rows[1][0], "u_n");
    EXPECT_NEAR(std::stod(rows[1][1]), 1.25643, 1e-5);
    EXPECT_LT(std::stod(rows[1][2]), 1e-13);
}

TEST(Cli, IdenticalCommandsGiveIdenticalOutput) {
    const std::vector<std::string> cmd{"sample", "--alpha", "1.3", "--preset", "symmetric-axes:1", "--count",
                                       "200", "--seed", "99"};
    EXPECT_EQ(run_cli(cmd).out, run_cli(cmd).out);
    auto other = cmd;
    other.back() = "100";
    EXPECT_NE(run_cli(cmd).out, run_cli(other).out);
}

TEST(Cli, ConfigFileIsMergedUnderFlags) {
    const auto path = temp_path("config.txt");
    {
        std::ofstream f(path);
        f << "# experiment\nalpha = 1.5\npreset = symmetric-axes:2\nn = 5\nx-grid = 1:30:5\n";
    }
    const CliRun merged = run_cli({"bounds", "--config", path.string(), "--n", "10", "--no-envelope"});
    const CliRun direct = run_cli({"bounds", "--alpha", "1.5", "--preset", "symmetric-axes:2", "--n", "10", "--x-grid",
                                "1:30:5", "--no-envelope"});
    ASSERT_EQ(merged.code, 0) << merged.err;
    EXPECT_EQ(merged.out, direct.out);
    std::filesystem::remove(path);
}

TEST(Cli, UnknownConfigKeyIsAUsageError) {
    const auto path = temp_path("bad_config.txt");
    {
        std::ofstream f(path);
        f << "alpha = 1.5\nbogus = 3\n";
    }
    const CliRun r = run_cli({"roots", "--config", path.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bogus"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"roots", "--alpha", "2.5"}).code, 2);
    EXPECT_EQ(run_cli({"roots", "--alpha", "1.5", "--unknown-flag"}).code, 2);
    EXPECT_EQ(run_cli({"bounds", "--alpha", "1.5", "--x-grid", "5:1:3"}).code, 2);
    EXPECT_EQ(run_cli({"bounds", "--alpha", "1.5", "--regime", "gaussian-limit", "--x-grid", "1:2:2"}).code, 0);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, VerifyAdversarialShiftExitsOne) {
    const auto prefix = temp_path("adversarial").string();
    const CliRun r = run_cli({"verify", "--alpha", "1.5", "--preset", "symmetric-axes:2", "--regime", "intermediate-v1",
                           "--n", "3", "--target", "coordinate:1", "--budget", "20000", "--grid-points", "5",
                           "--shift", "10", "--output", prefix});
    EXPECT_EQ(r.code, 1) << r.err;
    EXPECT_TRUE(std::filesystem::exists(prefix + ".csv"));
    EXPECT_TRUE(std::filesystem::exists(prefix + ".json"));
    std::filesystem::remove(prefix + ".csv");
    std::filesystem::remove(prefix + ".json");
}

TEST(Cli, GaussianLimitSweep) {
    const CliRun r = run_cli({"gaussian-limit"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].size(), 9u);
}

TEST(Cli, RegimesListsEveryN) {
    const CliRun r = run_cli({"regimes", "--alpha", "1.5", "--preset", "symmetric-axes:2", "--regime", "intermediate-v2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(csv_rows(r.out).size(), 30u);  // header + n = 2..30
}
