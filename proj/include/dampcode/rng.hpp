#pragma once

#include <cmath>
#include <cstdint>

namespace dampcode {

/// SplitMix64 mixer; also used to derive independent per-cell streams from a
/// master seed so parallel sweeps stay reproducible.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic counter-based stream key: mixes the master seed with the
/// cell coordinates (gamma index, scheme index, state index, extra salt).
inline uint64_t derive_stream(uint64_t master, uint64_t a, uint64_t b = 0, uint64_t c = 0,
                              uint64_t d = 0) {
    uint64_t s = master;
    uint64_t k = splitmix64(s);
    s ^= a * 0x9e3779b97f4a7c15ULL;
    k ^= splitmix64(s);
    s ^= b * 0xd1b54a32d192ed03ULL;
    k ^= splitmix64(s);
    s ^= c * 0x8cb92ba72f3d8dd7ULL;
    k ^= splitmix64(s);
    s ^= d * 0xaef17502108ef2d9ULL;
    k ^= splitmix64(s);
    return k;
}

/// xoshiro256** seeded via SplitMix64. Small, fast, and fully specified, so
/// seeded runs are bit-identical.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (caches the spare value).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) { return next() % n; }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4]{};
    double spare_ = 0;
    bool has_spare_ = false;
};

} // namespace dampcode
