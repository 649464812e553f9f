// Deterministic random helpers. Distributions are inverse-transform sampled
// by hand so results depend only on the mt19937_64 stream, not on a standard
// library's distribution implementation. Tests freeze expected values.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aonsim {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in (0, 1]: never returns 0 so log() is safe.
    double uniform01() {
        return (static_cast<double>(eng_() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
    }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_below(std::uint64_t n) { return eng_() % n; }

    // Exponential interarrival gap for the given rate (events per us).
    double exponential(double rate_per_us) { return -std::log(uniform01()) / rate_per_us; }

    // Number of attempts until the first success when each attempt fails
    // with probability q. Returns at least 1.
    std::uint32_t trials_until_success(double q) {
        if (q <= 0.0)
            return 1;
        double u = uniform01();
        double t = 1.0 + std::floor(std::log(u) / std::log(q));
        if (t < 1.0)
            t = 1.0;
        if (t > 1e7)
            t = 1e7;
        return static_cast<std::uint32_t>(t);
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace aonsim
