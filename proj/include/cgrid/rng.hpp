#pragma once

#include <cstdint>
#include <random>

namespace cgrid {

// SplitMix64 step (Vigna's reference mixer). Advances `state` and returns
// the next output word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stable hash of (base, a, b, c) used to derive per-job seeds: each word is
// folded into a running SplitMix64 state. Sweep replications get independent
// streams from (base_seed, kind, x, rep) without any coordination.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b, std::uint64_t c) {
    std::uint64_t s = base;
    splitmix64(s);
    s ^= a;
    splitmix64(s);
    s ^= b;
    splitmix64(s);
    s ^= c;
    std::uint64_t t = s;
    return splitmix64(t);
}

// mt19937_64 wrapper with fixed uniform draws. The standard specifies the
// engine's output sequence but not the distributions', so the helpers below
// keep results identical across compilers and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, bound), bound >= 1; unbiased via rejection
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace cgrid
