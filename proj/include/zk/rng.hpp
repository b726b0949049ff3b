#ifndef ZK_RNG_HPP
#define ZK_RNG_HPP

#include <cstdint>

namespace zk {

// Counter-based generator: every draw is a pure function of (seed, stream, counter),
// so ensemble member k and mode j can be regenerated in isolation and resolution
// refinement leaves previously drawn values untouched.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

    // Uniform in [0, 1).
    double uniform(uint64_t counter) const;

    // Uniform in [0, 2*pi).
    double angle(uint64_t counter) const;

    // Standard normal (Box-Muller on two derived uniforms).
    double normal(uint64_t counter) const;

    uint64_t bits(uint64_t counter) const;

private:
    uint64_t seed_;
    uint64_t stream_;
};

} // namespace zk

#endif
