#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plcbench/net/socket.hpp"
#include "plcbench/profiles.hpp"
#include "plcbench/wire/bytes.hpp"

namespace plcbench {
namespace harness {

struct MeasurementConfig {
    Interface iface = Interface::ouc_udp;
    Device device = Device::s7_1512;
    int n = 10;
    // Updates to observe in total; the first `warmup` gaps are discarded by
    // the summary.
    int samples = 155;
    int warmup = 50;
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
    // UADP only: group to join and the interface carrying it.
    std::string group = "239.0.0.1";
    std::string interface_addr = "127.0.0.1";
    std::uint16_t db = 1;
    std::uint32_t start = 0;
    wire::ByteOrder order = wire::ByteOrder::big_endian;
    net::Millis timeout{10000};
};

// Arrival instants of complete updates, monotonic microseconds.
struct MeasurementRun {
    Interface iface = Interface::ouc_udp;
    Device device = Device::s7_1512;
    int n = 0;
    int warmup = 0;
    std::vector<std::int64_t> timestamps_us;

    std::vector<std::int64_t> gaps_us() const;
};

struct UpdateTimeStats {
    std::int64_t count = 0; // gaps after warmup
    std::int64_t min_us = 0;
    double mean_us = 0.0;
    double p50_us = 0.0;
    double p99_us = 0.0;
};

// Observes `samples` complete updates over the configured interface:
// connects and polls the request/response services, receives the pushed and
// published ones. Throws ConnectionError, TimeoutError or
// MalformedMessageError when the exchange is not exactly right.
MeasurementRun run_measurement(const MeasurementConfig& cfg);

// Statistics over the post-warmup gaps. Quantiles interpolate linearly
// between order statistics. Throws InsufficientSamplesError below 2 usable
// gaps.
UpdateTimeStats summarize(const MeasurementRun& run);
UpdateTimeStats summarize_gaps(std::span<const std::int64_t> gaps, int warmup);

// Raw dump: header comments with the run coordinates, one timestamp per row.
std::string run_to_csv(const MeasurementRun& run);
MeasurementRun run_from_csv(const std::string& text); // throws InvalidConfigError

// Stats document with the run coordinates, for feeding back into the
// break-even table.
std::string stats_to_json(const MeasurementRun& run, const UpdateTimeStats& stats);

} // namespace harness
} // namespace plcbench
