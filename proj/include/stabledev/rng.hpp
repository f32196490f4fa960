#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace stabledev {

// Philox4x64-10 counter-based generator keyed by (seed, stream_id). The output
// sequence matches numpy's Philox bit generator with key = [seed, stream_id]:
// the counter is incremented before each 4-word block is produced.
class Philox4x64 {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    Philox4x64(std::uint64_t seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    static Block block(Block counter, Key key);

    std::uint64_t seed() const { return key_[0]; }
    std::uint64_t stream_id() const { return key_[1]; }

private:
    Key key_;
    Block counter_{};
    Block buffer_{};
    int index_ = 4;
};

// The random source handed to samplers: one independent stream.
using RngStream = Philox4x64;

// Uniform on the open interval (0, 1) from the top 53 bits.
double uniform01(RngStream& rng);
// Exp(1).
double standard_exponential(RngStream& rng);

}  // namespace stabledev
