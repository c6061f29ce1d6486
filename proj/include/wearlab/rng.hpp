#pragma once

#include <cstddef>
#include <cstdint>

namespace wearlab {

// SplitMix64 generator (Steele, Lea & Flood 2014). Chosen because it is a
// named, trivially portable algorithm: every result in this codebase that
// depends on randomness is reproducible from (seed, stream) alone.
//
// Stream derivation: the initial state is mix64(seed) ^ mix64(stream + 1),
// giving independent streams per task index. Bootstrap iterations, split
// shuffles, and weight initializers all draw from their own stream so results
// do not depend on evaluation order or parallelism.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double next_double();

    // Uniform integer in [0, n), unbiased via rejection sampling. n > 0.
    std::size_t next_below(std::size_t n);

    // Standard normal via Box-Muller on two next_double() draws.
    double next_normal();

    static std::uint64_t mix64(std::uint64_t x);

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace wearlab
