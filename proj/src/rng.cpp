#include "stabledev/rng.hpp"

#include <cmath>

namespace stabledev {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

}  // namespace

Philox4x64::Philox4x64(std::uint64_t seed, std::uint64_t stream_id) : key_{seed, stream_id} {}

Philox4x64::Block Philox4x64::block(Block x, Key k) {
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, x[0], hi0, lo0);
        mulhilo(kMul1, x[2], hi1, lo1);
        x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return x;
}

Philox4x64::result_type Philox4x64::operator()() {
    if (index_ == 4) {
        for (auto& word : counter_)
            if (++word != 0) break;
        buffer_ = block(counter_, key_);
        index_ = 0;
    }
    return buffer_[index_++];
}

double uniform01(RngStream& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

double standard_exponential(RngStream& rng) { return -std::log(uniform01(rng)); }

}  // namespace stabledev
