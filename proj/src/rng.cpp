#include "zk/rng.hpp"

#include <cmath>
#include <numbers>

namespace zk {

namespace {

// splitmix64 finalizer; statistically solid for simulation seeding purposes.
uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

uint64_t CounterRng::bits(uint64_t counter) const {
    uint64_t h = mix(seed_ ^ 0x5851f42d4c957f2dull);
    h = mix(h ^ stream_);
    h = mix(h ^ counter);
    return h;
}

double CounterRng::uniform(uint64_t counter) const {
    // 53 high bits -> double in [0,1).
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::angle(uint64_t counter) const {
    return uniform(counter) * 2.0 * std::numbers::pi;
}

double CounterRng::normal(uint64_t counter) const {
    double u1 = uniform(counter * 2 + 1);       // avoid u1 == 0
    double u2 = uniform(counter * 2 + 2);
    u1 = std::max(u1, 1e-16);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace zk
