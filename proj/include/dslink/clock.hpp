// Time source abstraction.  Services take a Clock so TTLs, refresh cycles
// and staleness horizons can be driven by a simulated clock in tests.
#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace dslink {

using TimePoint = std::chrono::system_clock::time_point;
using Seconds = std::chrono::seconds;

class Clock {
public:
    virtual ~Clock() = default;
    virtual TimePoint now() const = 0;
};

class SystemClock final : public Clock {
public:
    TimePoint now() const override { return std::chrono::system_clock::now(); }
};

class SimulatedClock final : public Clock {
public:
    explicit SimulatedClock(TimePoint start) : now_(start) {}

    TimePoint now() const override {
        std::lock_guard lock(mu_);
        return now_;
    }

    void advance(Seconds delta) {
        std::lock_guard lock(mu_);
        now_ += delta;
    }

    void set(TimePoint t) {
        std::lock_guard lock(mu_);
        now_ = t;
    }

private:
    mutable std::mutex mu_;
    TimePoint now_;
};

// RFC 3339 timestamps at second precision, always UTC (`2006-09-14T12:00:00Z`).
std::string format_rfc3339(TimePoint t);

// Accepts `Z` or a `+hh:mm`/`-hh:mm` offset; fractional seconds are ignored.
std::optional<TimePoint> parse_rfc3339(std::string_view s);

// Convenience for building deterministic fixture times.
TimePoint make_utc_time(int year, int month, int day, int hour = 0, int minute = 0, int second = 0);

}  // namespace dslink
