#pragma once

#include <cstdint>
#include <compare>
#include <cmath>

namespace macc::sim {

/// Simulation clock value in integer nanoseconds.
///
/// Fixed-point time keeps event ordering exact: two runs with the same
/// seed produce the same (time, tiebreak) sequence with no dependence on
/// floating-point rounding.
class SimTime {
public:
    constexpr SimTime() = default;

    static constexpr SimTime from_ns(std::int64_t ns) { return SimTime{ns}; }

    static SimTime from_seconds(double s) {
        return SimTime{static_cast<std::int64_t>(std::llround(s * 1e9))};
    }

    constexpr std::int64_t ns() const { return ns_; }
    constexpr double seconds() const { return static_cast<double>(ns_) * 1e-9; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime rhs) const { return SimTime{ns_ + rhs.ns_}; }
    constexpr SimTime operator-(SimTime rhs) const { return SimTime{ns_ - rhs.ns_}; }
    SimTime& operator+=(SimTime rhs) {
        ns_ += rhs.ns_;
        return *this;
    }

    constexpr SimTime operator*(std::int64_t k) const { return SimTime{ns_ * k}; }

private:
    constexpr explicit SimTime(std::int64_t ns) : ns_(ns) {}

    std::int64_t ns_ = 0;
};

}  // namespace macc::sim
