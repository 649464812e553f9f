// Fixed-point simulation clock. One tick = 0.01 us, so all timing constants
// used by the model (1 us propagation, 2 us processing, 1 us flit cycle)
// are exact and comparisons never suffer float drift.
#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace aonsim {

class SimTime {
  public:
    static constexpr std::int64_t kTicksPerUs = 100;

    constexpr SimTime() : ticks_(0) {}

    static constexpr SimTime from_ticks(std::int64_t t) {
        SimTime s;
        s.ticks_ = t;
        return s;
    }
    static SimTime from_us(double us) { return from_ticks(std::llround(us * kTicksPerUs)); }

    constexpr std::int64_t ticks() const { return ticks_; }
    double to_us() const { return static_cast<double>(ticks_) / kTicksPerUs; }

    friend constexpr SimTime operator+(SimTime a, SimTime b) { return from_ticks(a.ticks_ + b.ticks_); }
    friend constexpr SimTime operator-(SimTime a, SimTime b) { return from_ticks(a.ticks_ - b.ticks_); }
    SimTime& operator+=(SimTime o) {
        ticks_ += o.ticks_;
        return *this;
    }
    friend constexpr SimTime operator*(SimTime a, std::int64_t k) { return from_ticks(a.ticks_ * k); }

    constexpr auto operator<=>(const SimTime&) const = default;

  private:
    std::int64_t ticks_;
};

} // namespace aonsim
