#pragma once

#include <cstdint>
#include <random>

namespace rmtkit {

/// splitmix64 finalizer; used to turn (master_seed, counter) pairs into
/// well-mixed per-trial seeds that do not depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t counter) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(counter + 0x51ed270b0f4d3c9bULL));
}

/// Standard normal draws via Box-Muller on top of mt19937_64 uniforms.
/// mt19937_64's output sequence is pinned by the standard, and the uniform
/// and transform steps below are plain double arithmetic, so the stream is
/// reproducible across platforms (unlike std::normal_distribution).
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    // in (0, 1), never exactly 0 or 1
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace rmtkit
