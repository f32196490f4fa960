#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "stabledev/rng.hpp"

using namespace stabledev;

namespace {
std::vector<std::uint64_t> first(std::uint64_t seed, std::uint64_t stream, int count) {
    Philox4x64 g(seed, stream);
    std::vector<std::uint64_t> out;
    for (int i = 0; i < count; ++i) out.push_back(g());
    return out;
}
}  // namespace

// Reference values from numpy.random.Philox(key=[seed, stream]).random_raw().
TEST(Philox, MatchesReferenceStreamZero) {
    const std::vector<std::uint64_t> expected{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
                                              0x907d7a052fd5b4dcULL};
    EXPECT_EQ(first(0, 0, 4), expected);
}

TEST(Philox, MatchesReferenceAcrossBlocks) {
    const std::vector<std::uint64_t> expected{0xa64064f34e84b9a3ULL, 0xe287959a866a08fdULL, 0x8dc181f009b96c03ULL,
                                              0xf3f6001d4fa83454ULL, 0x69c633ee791df6b3ULL, 0x89327f7a8f0127a4ULL,
                                              0x1ed8260458996ff6ULL, 0x4299f7433fb1683eULL};
    EXPECT_EQ(first(42, 7, 8), expected);
}

TEST(Philox, MatchesReferenceLargeKey) {
    const auto got = first(0xDEADBEEF, 3, 2);
    EXPECT_EQ(got[0], 0xba5e8f90ab4283e3ULL);
    EXPECT_EQ(got[1], 0x5492e10d9045cd94ULL);
}

TEST(Philox, StreamsDiffer) {
    EXPECT_NE(first(1, 0, 4), first(1, 1, 4));
    EXPECT_NE(first(0, 1, 4), first(1, 0, 4));
}

TEST(Uniform, OpenUnitInterval) {
    Philox4x64 g(3, 0);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = uniform01(g);
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 100000, 0.5, 4 * 0.2887 / std::sqrt(100000.0));
}

TEST(Exponential, UnitMean) {
    Philox4x64 g(4, 0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += standard_exponential(g);
    EXPECT_NEAR(sum / n, 1.0, 4.0 / std::sqrt(n));
}
