#include "plcbench/emulator/pacer.hpp"

#include <algorithm>
#include <thread>

#include "plcbench/errors.hpp"

namespace plcbench {
namespace emu {

namespace {

using Clock = std::chrono::steady_clock;

// Sleep coarsely, then spin the last stretch for microsecond accuracy.
bool wait_until(Clock::time_point target, const std::atomic<bool>& stop) {
    constexpr auto kSpinWindow = std::chrono::microseconds(200);
    constexpr auto kPollSlice = std::chrono::milliseconds(1);
    for (;;) {
        if (stop.load(std::memory_order_relaxed)) {
            return false;
        }
        const auto now = Clock::now();
        if (now >= target) {
            return true;
        }
        const auto left = target - now;
        if (left > kSpinWindow + kPollSlice) {
            std::this_thread::sleep_for(kPollSlice);
        } else if (left > kSpinWindow) {
            std::this_thread::sleep_for(left - kSpinWindow);
        } else {
            while (Clock::now() < target) {
                if (stop.load(std::memory_order_relaxed)) {
                    return false;
                }
            }
            return true;
        }
    }
}

} // namespace

TokenPacer::TokenPacer(std::chrono::microseconds interval, std::uint64_t seed)
    : interval_(interval), rng_(seed) {
    if (interval <= std::chrono::microseconds(0)) {
        throw InvalidConfigError("pacer interval must be positive");
    }
}

void TokenPacer::set_interval(std::chrono::microseconds interval) {
    if (interval <= std::chrono::microseconds(0)) {
        throw InvalidConfigError("pacer interval must be positive");
    }
    interval_ = interval;
}

bool TokenPacer::wait(const std::atomic<bool>& stop) {
    const auto now = Clock::now();
    if (!armed_) {
        armed_ = true;
        last_release_ = now;
        return !stop.load(std::memory_order_relaxed);
    }
    const double stretch = 1.0 + jitter_(rng_);
    const auto gap = std::chrono::duration_cast<Clock::duration>(
        std::chrono::duration<double, std::micro>(
            static_cast<double>(interval_.count()) * stretch));
    // Anchor on the previous actual release, not the previous slot: a late
    // wakeup must stretch the schedule, never compress the following gap.
    const auto slot = std::max(last_release_ + gap, now);
    const bool alive = wait_until(slot, stop);
    last_release_ = Clock::now();
    return alive;
}

void TokenPacer::mark() {
    last_release_ = Clock::now();
}

} // namespace emu
} // namespace plcbench
