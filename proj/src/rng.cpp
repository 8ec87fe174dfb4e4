#include "ccr/rng.hpp"

namespace ccr {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed, Stream stream, std::uint64_t index) {
    // Mix the three words through independent splitmix chains so that
    // neighbouring indices produce unrelated states.
    std::uint64_t a = seed;
    std::uint64_t key = splitmix64(a);
    std::uint64_t b = key ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL);
    key = splitmix64(b);
    std::uint64_t c = key ^ (index * 0xaef17502108ef2d9ULL);
    for (auto& w : s_) w = splitmix64(c);
}

Rng::result_type Rng::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::uniform_pos() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

}  // namespace ccr
