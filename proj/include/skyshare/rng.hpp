#pragma once

#include <cstdint>
#include <cmath>
#include <limits>

namespace skyshare {

// Counter-free seed mixing (splitmix64). Used both as a seed expander and
// to derive independent per-realization streams from one master seed, so
// realization k is reproducible regardless of execution order.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream id for (master seed, realization index, purpose tag).
inline constexpr std::uint64_t derive_stream(std::uint64_t master,
                                             std::uint64_t index,
                                             std::uint64_t tag) noexcept {
    return splitmix64(splitmix64(master) ^ splitmix64(index * 3u + tag + 1u));
}

// xoshiro256++ (Blackman & Vigna). Chosen over std engines because its
// output is bit-identical across standard libraries and platforms, which
// the reproducibility contract of the simulator relies on.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed = 0) noexcept {
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x = splitmix64(x);
            w = x;
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<std::uint64_t>::max();
    }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1]; safe as a log argument.
    double uniform_pos() noexcept {
        return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

    // Unit-mean exponential (Rayleigh fading power gain).
    double exponential() noexcept { return -std::log(uniform_pos()); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace skyshare
