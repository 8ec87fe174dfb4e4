#pragma once

#include <cstdint>
#include <limits>

namespace ccr {

// Consumers of randomness. Each one draws from its own stream so results do
// not depend on the order in which modules run.
enum class Stream : std::uint64_t {
    users = 1,
    fading = 2,
    monte_carlo = 3,
    annealing = 4,
    instances = 5,
    test = 99,
};

// xoshiro256** seeded through splitmix64 from (seed, stream, index).
// The split is counter based: any (stream, index) pair can be constructed
// directly without advancing another generator.
class Rng {
public:
    using result_type = std::uint64_t;

    Rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform on (0, 1], safe for log().
    double uniform_pos();

private:
    std::uint64_t s_[4];
};

}  // namespace ccr
