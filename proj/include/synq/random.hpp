#pragma once

#include <cmath>
#include <cstdint>

namespace synq {

// splitmix64 step; used to expand seeds into generator state and to derive
// independent per-job / per-neuron seeds from one master seed.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    uint64_t s = master ^ (0xd1b54a32d192ed03ull * (index + 1));
    return splitmix64(s);
}

// Marsaglia xor128. Small state, fast, good enough for connectivity sampling
// and spike coin flips; seeded per stream so parallel expansion stays
// deterministic.
class xorshift {
public:
    using result_type = uint32_t;

    xorshift() { reseed(0x853c49e6748fea9bull); }
    explicit xorshift(uint64_t seed) { reseed(seed); }

    void reseed(uint64_t seed) {
        uint64_t s = seed;
        uint64_t a = splitmix64(s);
        uint64_t b = splitmix64(s);
        x_ = static_cast<uint32_t>(a);
        y_ = static_cast<uint32_t>(a >> 32);
        z_ = static_cast<uint32_t>(b);
        w_ = static_cast<uint32_t>(b >> 32);
        if ((x_ | y_ | z_ | w_) == 0) w_ = 0x6b43a9b5u;
    }

    uint32_t operator()() {
        uint32_t t = x_ ^ (x_ << 11);
        x_ = y_;
        y_ = z_;
        z_ = w_;
        w_ = w_ ^ (w_ >> 19) ^ (t ^ (t >> 8));
        return w_;
    }

    // uniform in (0, 1]; never returns 0, so -log() is always finite
    double uniform01() {
        return (static_cast<double>((*this)()) + 1.0) * 0x1p-32;
    }

    static constexpr uint32_t min() { return 0; }
    static constexpr uint32_t max() { return 0xffffffffu; }

private:
    uint32_t x_, y_, z_, w_;
};

// number of failures before the first success, P(G=k) = (1-p)^k p
inline uint64_t geometric(double p, xorshift& rng) {
    double denom = std::log1p(-p);
    return static_cast<uint64_t>(std::floor(std::log(rng.uniform01()) / denom));
}

// exact Binomial(m, p) via geometric waiting times; O(m*p) expected work,
// which over a whole construction totals one step per generated edge
inline uint32_t binomial(uint32_t m, double p, xorshift& rng) {
    if (p <= 0.0 || m == 0) return 0;
    if (p >= 1.0) return m;
    uint32_t count = 0;
    uint64_t pos = geometric(p, rng);
    while (pos < m) {
        ++count;
        pos += 1 + geometric(p, rng);
    }
    return count;
}

} // namespace synq
