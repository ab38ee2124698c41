#include "plcbench/harness/measurement.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "plcbench/errors.hpp"
#include "plcbench/version.hpp"
#include "plcbench/wire/codecs.hpp"

namespace plcbench {
namespace harness {

namespace {

std::int64_t now_us() {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Dates each message by the kernel delivery stamp when the socket supports
// it, so receiver wakeup latency cannot shorten a measured gap. A run sticks
// to one clock throughout: if the first read carries no stamp, the whole run
// falls back to the process clock.
class SampleClock {
public:
    explicit SampleClock(net::Socket& socket)
        : socket_(&socket), kernel_(socket.enable_rx_timestamps()) {}

    std::int64_t sample() {
        if (kernel_) {
            if (const std::optional<std::int64_t> us = socket_->last_rx_us()) {
                return *us;
            }
            kernel_ = false;
        }
        return now_us();
    }

private:
    net::Socket* socket_;
    bool kernel_;
};

void check_config(const MeasurementConfig& cfg) {
    if (cfg.n < 1) {
        throw InvalidConfigError("value count must be at least 1");
    }
    if (cfg.warmup < 0 || cfg.samples < cfg.warmup + 3) {
        throw InvalidConfigError("need at least warmup + 3 samples, got " +
                                 std::to_string(cfg.samples));
    }
    if (cfg.port == 0) {
        throw InvalidConfigError("a measurement needs an explicit port");
    }
}

MeasurementRun make_run(const MeasurementConfig& cfg) {
    MeasurementRun run;
    run.iface = cfg.iface;
    run.device = cfg.device;
    run.n = cfg.n;
    run.warmup = cfg.warmup;
    run.timestamps_us.reserve(static_cast<size_t>(cfg.samples));
    return run;
}

// One complete length-framed message from a stream, blocking.
template <typename LengthFn>
std::vector<std::uint8_t> read_frame(net::TcpStream& stream,
                                     std::vector<std::uint8_t>& buffer,
                                     LengthFn frame_length, net::Millis timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
        const size_t len = frame_length(std::span<const std::uint8_t>(buffer));
        if (len > 0 && buffer.size() >= len) {
            std::vector<std::uint8_t> frame(buffer.begin(),
                                            buffer.begin() + static_cast<std::ptrdiff_t>(len));
            buffer.erase(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(len));
            return frame;
        }
        if (len == 0 && buffer.size() >= 8) {
            throw MalformedMessageError("stream does not start with a known header");
        }
        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            throw TimeoutError("no complete message within the timeout");
        }
        const auto left = std::chrono::duration_cast<net::Millis>(deadline - now);
        std::vector<std::uint8_t> chunk = stream.recv_some(16384, left);
        buffer.insert(buffer.end(), chunk.begin(), chunk.end());
    }
}

MeasurementRun measure_ouc_udp(const MeasurementConfig& cfg) {
    MeasurementRun run = make_run(cfg);
    net::UdpSocket socket = net::UdpSocket::bind(cfg.host, cfg.port);
    SampleClock clock(socket);
    // Datagrams queued in the instant before the stamp option went on would
    // carry no stamp and push the whole run onto the coarser clock; shed them.
    try {
        for (;;) {
            socket.recv(65536, net::Millis(0));
        }
    } catch (const TimeoutError&) {
    }
    const size_t expected = static_cast<size_t>(cfg.n) * 4;
    for (int i = 0; i < cfg.samples; ++i) {
        const std::vector<std::uint8_t> datagram = socket.recv(65536, cfg.timeout);
        if (datagram.size() != expected) {
            throw MalformedMessageError("ouc datagram has " +
                                        std::to_string(datagram.size()) + " bytes, expected " +
                                        std::to_string(expected));
        }
        wire::decode_ouc(datagram, cfg.order);
        run.timestamps_us.push_back(clock.sample());
    }
    return run;
}

MeasurementRun measure_ouc_tcp(const MeasurementConfig& cfg) {
    MeasurementRun run = make_run(cfg);
    net::TcpListener listener = net::TcpListener::bind(cfg.host, cfg.port);
    listener.enable_rx_timestamps();
    net::TcpStream stream = listener.accept(cfg.timeout);
    SampleClock clock(stream);
    const size_t expected = static_cast<size_t>(cfg.n) * 4;
    for (int i = 0; i < cfg.samples; ++i) {
        const std::vector<std::uint8_t> record = stream.recv_exact(expected, cfg.timeout);
        wire::decode_ouc(record, cfg.order);
        run.timestamps_us.push_back(clock.sample());
    }
    return run;
}

MeasurementRun measure_s7(const MeasurementConfig& cfg) {
    MeasurementRun run = make_run(cfg);
    const PlcProfile& profile = PlcProfile::stock(cfg.device);
    net::TcpStream stream = net::TcpStream::connect(cfg.host, cfg.port, cfg.timeout);
    SampleClock clock(stream);
    wire::S7ReadSpec spec;
    spec.db_number = cfg.db;
    spec.start_offset = cfg.start;
    spec.value_count = cfg.n;
    std::vector<std::uint8_t> buffer;
    std::uint16_t pdu_ref = 1;
    for (int i = 0; i < cfg.samples; ++i) {
        spec.first_pdu_ref = pdu_ref;
        const std::vector<wire::S7Message> jobs = wire::split_for_pdu(spec, profile);
        pdu_ref = static_cast<std::uint16_t>(pdu_ref + jobs.size());
        for (const wire::S7Message& job : jobs) {
            stream.send_all(wire::encode(job));
            const wire::S7Message ack =
                wire::decode_s7(read_frame(stream, buffer, wire::s7_frame_length, cfg.timeout));
            if (ack.kind != wire::S7Message::Kind::ack_data ||
                ack.pdu_ref != job.pdu_ref || ack.return_code != wire::kS7ReturnOk ||
                ack.data.size() != job.item.byte_count) {
                throw MalformedMessageError("ack does not answer the job");
            }
        }
        run.timestamps_us.push_back(clock.sample());
    }
    return run;
}

MeasurementRun measure_opcua_read(const MeasurementConfig& cfg) {
    MeasurementRun run = make_run(cfg);
    net::TcpStream stream = net::TcpStream::connect(cfg.host, cfg.port, cfg.timeout);
    SampleClock clock(stream);
    std::vector<std::uint8_t> buffer;
    for (int i = 0; i < cfg.samples; ++i) {
        wire::OpcUaServiceMessage request;
        request.kind = wire::OpcUaServiceMessage::Kind::read_request;
        request.request_id = static_cast<std::uint32_t>(i + 1);
        request.request_handle = static_cast<std::uint32_t>(i + 1);
        for (int k = 0; k < cfg.n; ++k) {
            request.node_ids.push_back(wire::read_node_id(k));
        }
        stream.send_all(wire::encode(request));
        const wire::OpcUaServiceMessage response = wire::decode_opcua(
            read_frame(stream, buffer, wire::opcua_frame_length, cfg.timeout));
        if (response.kind != wire::OpcUaServiceMessage::Kind::read_response ||
            response.request_handle != request.request_handle ||
            response.values.size() != static_cast<size_t>(cfg.n)) {
            throw MalformedMessageError("response does not answer the read request");
        }
        run.timestamps_us.push_back(clock.sample());
    }
    return run;
}

MeasurementRun measure_opcua_write(const MeasurementConfig& cfg) {
    MeasurementRun run = make_run(cfg);
    net::TcpListener listener = net::TcpListener::bind(cfg.host, cfg.port);
    listener.enable_rx_timestamps();
    net::TcpStream stream = listener.accept(cfg.timeout);
    SampleClock clock(stream);
    std::vector<std::uint8_t> buffer;
    for (int i = 0; i < cfg.samples; ++i) {
        const wire::OpcUaServiceMessage request = wire::decode_opcua(
            read_frame(stream, buffer, wire::opcua_frame_length, cfg.timeout));
        if (request.kind != wire::OpcUaServiceMessage::Kind::write_request ||
            request.node_ids.size() != static_cast<size_t>(cfg.n)) {
            throw MalformedMessageError("expected a write request for " +
                                        std::to_string(cfg.n) + " nodes");
        }
        run.timestamps_us.push_back(clock.sample());
        wire::OpcUaServiceMessage response;
        response.kind = wire::OpcUaServiceMessage::Kind::write_response;
        response.request_id = request.request_id;
        response.request_handle = request.request_handle;
        response.timestamp = request.timestamp;
        response.status_codes.assign(request.node_ids.size(), 0);
        stream.send_all(wire::encode(response));
    }
    return run;
}

MeasurementRun measure_uadp(const MeasurementConfig& cfg) {
    MeasurementRun run = make_run(cfg);
    net::UdpSocket socket = net::UdpSocket::bind(cfg.group, cfg.port);
    SampleClock clock(socket);
    if (net::is_multicast_address(cfg.group)) {
        socket.join_multicast(cfg.group, cfg.interface_addr);
    }
    // Datagrams queued in the instant before the stamp option went on would
    // carry no stamp and push the whole run onto the coarser clock; shed them.
    try {
        for (;;) {
            socket.recv(65536, net::Millis(0));
        }
    } catch (const TimeoutError&) {
    }
    for (int i = 0; i < cfg.samples; ++i) {
        const std::vector<std::uint8_t> datagram = socket.recv(65536, cfg.timeout);
        const wire::UadpNetworkMessage message = wire::decode_uadp(datagram);
        int fields = 0;
        for (const auto& w : message.writers) {
            fields += static_cast<int>(w.fields.size());
        }
        if (fields != cfg.n) {
            throw MalformedMessageError("publisher carries " + std::to_string(fields) +
                                        " fields, expected " + std::to_string(cfg.n));
        }
        run.timestamps_us.push_back(clock.sample());
    }
    return run;
}

} // namespace

MeasurementRun run_measurement(const MeasurementConfig& cfg) {
    check_config(cfg);
    switch (cfg.iface) {
    case Interface::ouc_udp: return measure_ouc_udp(cfg);
    case Interface::ouc_tcp: return measure_ouc_tcp(cfg);
    case Interface::s7: return measure_s7(cfg);
    case Interface::opcua_read: return measure_opcua_read(cfg);
    case Interface::opcua_write: return measure_opcua_write(cfg);
    case Interface::uadp: return measure_uadp(cfg);
    }
    throw UnknownNameError("unknown interface");
}

std::vector<std::int64_t> MeasurementRun::gaps_us() const {
    std::vector<std::int64_t> gaps;
    if (timestamps_us.size() > 1) {
        gaps.reserve(timestamps_us.size() - 1);
        for (size_t i = 1; i < timestamps_us.size(); ++i) {
            gaps.push_back(timestamps_us[i] - timestamps_us[i - 1]);
        }
    }
    return gaps;
}

namespace {

// Linear interpolation between order statistics of the sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const size_t lo = static_cast<size_t>(std::floor(h));
    const size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - std::floor(h);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

} // namespace

UpdateTimeStats summarize_gaps(std::span<const std::int64_t> gaps, int warmup) {
    if (warmup < 0) {
        throw InvalidConfigError("warmup cannot be negative");
    }
    if (gaps.size() < static_cast<size_t>(warmup) + 2) {
        throw InsufficientSamplesError("need at least " + std::to_string(warmup + 2) +
                                       " gaps, got " + std::to_string(gaps.size()));
    }
    std::vector<double> usable(gaps.begin() + warmup, gaps.end());
    UpdateTimeStats stats;
    stats.count = static_cast<std::int64_t>(usable.size());
    stats.mean_us = std::accumulate(usable.begin(), usable.end(), 0.0) /
                    static_cast<double>(usable.size());
    std::sort(usable.begin(), usable.end());
    stats.min_us = static_cast<std::int64_t>(usable.front());
    stats.p50_us = quantile_sorted(usable, 0.5);
    stats.p99_us = quantile_sorted(usable, 0.99);
    return stats;
}

UpdateTimeStats summarize(const MeasurementRun& run) {
    const std::vector<std::int64_t> gaps = run.gaps_us();
    return summarize_gaps(gaps, run.warmup);
}

std::string run_to_csv(const MeasurementRun& run) {
    std::ostringstream out;
    out << "# plcbench " << kVersion << "\n";
    out << "# interface=" << to_string(run.iface) << " device=" << to_string(run.device)
        << " n=" << run.n << " warmup=" << run.warmup << "\n";
    out << "timestamp_us\n";
    for (std::int64_t t : run.timestamps_us) {
        out << t << "\n";
    }
    return out.str();
}

MeasurementRun run_from_csv(const std::string& text) {
    MeasurementRun run;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    bool coordinates_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string token;
            while (meta >> token) {
                const size_t eq = token.find('=');
                if (eq == std::string::npos) {
                    continue;
                }
                const std::string key = token.substr(0, eq);
                const std::string value = token.substr(eq + 1);
                if (key == "interface") {
                    run.iface = interface_from_string(value);
                    coordinates_seen = true;
                } else if (key == "device") {
                    run.device = device_from_string(value);
                } else if (key == "n") {
                    run.n = std::stoi(value);
                } else if (key == "warmup") {
                    run.warmup = std::stoi(value);
                }
            }
            continue;
        }
        if (line == "timestamp_us") {
            header_seen = true;
            continue;
        }
        try {
            run.timestamps_us.push_back(std::stoll(line));
        } catch (const std::exception&) {
            throw InvalidConfigError("run CSV has a non-numeric row: " + line);
        }
    }
    if (!header_seen || !coordinates_seen) {
        throw InvalidConfigError("run CSV is missing its header");
    }
    return run;
}

std::string stats_to_json(const MeasurementRun& run, const UpdateTimeStats& stats) {
    nlohmann::json j;
    j["tool"] = "plcbench";
    j["version"] = kVersion;
    j["interface"] = std::string(to_string(run.iface));
    j["device"] = std::string(to_string(run.device));
    j["n"] = run.n;
    j["warmup"] = run.warmup;
    j["samples"] = run.timestamps_us.size();
    j["count"] = stats.count;
    j["min_us"] = stats.min_us;
    j["mean_us"] = stats.mean_us;
    j["p50_us"] = stats.p50_us;
    j["p99_us"] = stats.p99_us;
    return j.dump(2);
}

} // namespace harness
} // namespace plcbench
