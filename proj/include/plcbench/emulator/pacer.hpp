#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <random>

namespace plcbench {
namespace emu {

// Spaces consecutive sends at least one interval apart, the way the devices
// hold their update rates: each gap is the interval stretched by a small
// upward jitter, never compressed below it. Falling behind re-anchors at the
// present instead of bursting to catch up.
class TokenPacer {
public:
    static constexpr double kJitterLow = 0.030;
    static constexpr double kJitterHigh = 0.045;

    TokenPacer(std::chrono::microseconds interval, std::uint64_t seed);

    void set_interval(std::chrono::microseconds interval);
    std::chrono::microseconds interval() const { return interval_; }

    // Blocks until the next slot; returns false when `stop` was raised while
    // waiting. The first call passes immediately.
    bool wait(const std::atomic<bool>& stop);

    // Re-anchors the schedule at now. Call right after the paced work (the
    // send itself) so its cost stretches the next gap instead of eating it.
    void mark();

private:
    std::chrono::microseconds interval_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> jitter_{kJitterLow, kJitterHigh};
    std::chrono::steady_clock::time_point last_release_{};
    bool armed_ = false;
};

} // namespace emu
} // namespace plcbench
