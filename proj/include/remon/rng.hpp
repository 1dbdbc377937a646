#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace remon::rng {

// SplitMix64 mixer; expands a user seed into decorrelated per-stream seeds.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Substream for (seed, stream); streams are independent of evaluation order,
// so parallel consumers reproduce the single-threaded results exactly.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return std::mt19937_64(mix.next());
}

// Uniform variate strictly inside (0, 1): midpoints (j + 0.5) / 2^53.
inline double uniform_open(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller standard normal with cached spare. Written out explicitly so
// draws are identical across standard-library implementations.
class GaussianSampler {
  public:
    double operator()(std::mt19937_64& gen) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open(gen);
        const double u2 = uniform_open(gen);
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * M_PI * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

  private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Number of failures before the first success, P{m = j} = eps^j (1 - eps).
inline std::uint64_t geometric_failures(double eps, std::mt19937_64& gen) {
    if (!(eps >= 0.0) || !(eps < 1.0)) {
        throw std::invalid_argument("geometric_failures: eps must be in [0, 1)");
    }
    if (eps == 0.0) return 0;
    const double u = uniform_open(gen);
    return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(eps)));
}

} // namespace remon::rng
