#include "plcbench/frame_model.hpp"

#include <algorithm>

#include "plcbench/errors.hpp"

namespace plcbench {
namespace frame {

std::int64_t ethernet_frame_size(std::int64_t l3_bytes, const HeaderStack& stack) {
    if (l3_bytes < 0) {
        throw InvalidConfigError("network layer payload cannot be negative");
    }
    return std::max<std::int64_t>(l3_bytes, stack.min_l3_payload) + stack.ethernet_overhead;
}

std::string_view to_string(MessageName m) {
    switch (m) {
    case MessageName::udp_data: return "udp-data";
    case MessageName::tcp_data: return "tcp-data";
    case MessageName::job: return "job";
    case MessageName::ack_data: return "ack-data";
    case MessageName::write_request: return "write-request";
    case MessageName::write_response: return "write-response";
    case MessageName::read_request: return "read-request";
    case MessageName::read_response: return "read-response";
    case MessageName::dataset_message: return "dataset-message";
    }
    return "?";
}

MessageName message_from_string(std::string_view name) {
    for (MessageName m : kAllMessages) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw UnknownNameError("unknown message name: " + std::string(name));
}

namespace {

// Round half up of num / den for non-negative integers.
std::int64_t div_half_up(std::int64_t num, std::int64_t den) {
    return (num + den / 2) / den;
}

// Request growth per extra value is steeper once the service call carries more
// than a decade of values: the request switches to a bulkier item encoding.
// Both segments are anchored at the decade boundaries and interpolated with
// half-up rounding, which keeps every size integral and reproducible.
std::int64_t piecewise_request(int n, std::int64_t at1, std::int64_t at10,
                               std::int64_t at100) {
    if (n <= 10) {
        return at1 + (at10 - at1) / 9 * (n - 1);
    }
    return at10 + div_half_up((n - 10) * (at100 - at10), 90);
}

} // namespace

std::int64_t message_size(MessageName m, int n) {
    if (n < 1) {
        throw InvalidConfigError("value count must be at least 1");
    }
    const std::int64_t payload = payload_bytes(n);
    switch (m) {
    case MessageName::udp_data:
        return ethernet_frame_size(payload + 8 + 20, HeaderStack::udp());
    case MessageName::tcp_data:
        return ethernet_frame_size(payload + 20 + 20, HeaderStack::tcp()) + kTcpAckBytes;
    case MessageName::job:
        return 169; // fixed-size read request, one item, padding included
    case MessageName::ack_data:
        return 163 + payload;
    case MessageName::write_request:
        return piecewise_request(n, 234, 396, 2154);
    case MessageName::write_response:
        return 198 + payload;
    case MessageName::read_request:
        return piecewise_request(n, 270, 756, 5778);
    case MessageName::read_response:
        // Every result is a 14 byte data value: flags, type, 4 byte value
        // and an 8 byte source timestamp.
        return 198 + 14LL * n;
    case MessageName::dataset_message:
        return 68 + 5LL * n;
    }
    throw UnknownNameError("unknown message");
}

ExchangePattern exchange_pattern(Interface i) {
    ExchangePattern p;
    p.iface = i;
    switch (i) {
    case Interface::ouc_udp:
        p.messages = {{MessageName::udp_data, Direction::plc_to_edge}};
        break;
    case Interface::ouc_tcp:
        p.messages = {{MessageName::tcp_data, Direction::plc_to_edge}};
        p.includes_tcp_ack = true;
        break;
    case Interface::s7:
        p.messages = {{MessageName::job, Direction::edge_to_plc},
                      {MessageName::ack_data, Direction::plc_to_edge}};
        p.includes_tcp_ack = false;
        break;
    case Interface::opcua_write:
        p.messages = {{MessageName::write_request, Direction::plc_to_edge},
                      {MessageName::write_response, Direction::edge_to_plc}};
        break;
    case Interface::opcua_read:
        p.messages = {{MessageName::read_request, Direction::edge_to_plc},
                      {MessageName::read_response, Direction::plc_to_edge}};
        break;
    case Interface::uadp:
        p.messages = {{MessageName::dataset_message, Direction::plc_to_edge}};
        break;
    }
    return p;
}

namespace {

// Bytes of a single request/response exchange carrying n values, no splits.
std::int64_t single_exchange_bytes(Interface i, int n) {
    std::int64_t total = 0;
    for (const ExchangeMessage& m : exchange_pattern(i).messages) {
        total += message_size(m.name, n);
    }
    return total;
}

} // namespace

std::int64_t exchange_total_bytes(Interface i, int n, const PlcProfile& profile) {
    if (!profile.supports(i)) {
        throw UnsupportedInterfaceError(std::string(to_string(profile.model())) +
                                        " does not support " + std::string(to_string(i)));
    }
    if (i != Interface::s7) {
        return single_exchange_bytes(i, n);
    }
    // Each split repeats the request and the response framing; the value
    // payload is spread across the responses.
    const int k = profile.split_count(n);
    const std::int64_t per_exchange_overhead = message_size(MessageName::job, 1) + 163;
    return k * per_exchange_overhead + payload_bytes(n);
}

int efficiency_pct_tenths(std::int64_t payload, std::int64_t total) {
    if (total <= 0 || payload < 0 || payload > total) {
        throw InvalidConfigError("efficiency requires 0 <= payload <= total");
    }
    // Half up to hundredths of a percent, then half up to tenths. Both stages
    // are exact in integers.
    const std::int64_t hundredths = (payload * 10000 + total / 2) / total;
    return static_cast<int>((hundredths + 5) / 10);
}

std::string format_pct_tenths(int tenths) {
    std::string s = std::to_string(tenths / 10);
    s += '.';
    s += static_cast<char>('0' + tenths % 10);
    return s;
}

namespace {

// Ratio basis for the published efficiency: a split poll keeps the
// single-exchange byte count and divides the ratio by the split count, which
// is expressed here as multiplying the basis instead.
std::int64_t efficiency_total_bytes(Interface i, int n, const PlcProfile& profile) {
    if (i != Interface::s7) {
        return single_exchange_bytes(i, n);
    }
    return single_exchange_bytes(i, n) * profile.split_count(n);
}

} // namespace

double protocol_efficiency(Interface i, int n, const PlcProfile& profile) {
    if (!profile.supports(i)) {
        throw UnsupportedInterfaceError(std::string(to_string(profile.model())) +
                                        " does not support " + std::string(to_string(i)));
    }
    return static_cast<double>(payload_bytes(n)) /
           static_cast<double>(efficiency_total_bytes(i, n, profile));
}

EfficiencyReport build_efficiency_report(const std::vector<Device>& devices,
                                         const std::vector<Interface>& interfaces,
                                         const std::vector<int>& n_values) {
    EfficiencyReport report;
    std::vector<Interface> ifaces = interfaces;
    if (ifaces.empty()) {
        ifaces.assign(kAllInterfaces.begin(), kAllInterfaces.end());
    }
    std::vector<int> ns = n_values;
    if (ns.empty()) {
        ns = {1, 10, 100};
    }
    for (int n : ns) {
        if (n < 1) {
            throw InvalidConfigError("value count must be at least 1");
        }
    }
    for (Interface i : ifaces) {
        for (Device d : devices) {
            const PlcProfile& profile = PlcProfile::stock(d);
            for (int n : ns) {
                EfficiencyRow row;
                row.iface = i;
                row.device = d;
                row.n = n;
                if (!profile.supports(i)) {
                    report.rows.push_back(row);
                    continue;
                }
                row.supported = true;
                row.payload_bytes = payload_bytes(n);
                row.total_bytes = efficiency_total_bytes(i, n, profile);
                row.exchange_bytes = exchange_total_bytes(i, n, profile);
                row.efficiency_tenths = efficiency_pct_tenths(row.payload_bytes, row.total_bytes);
                row.split_exchange = i == Interface::s7 && profile.split_count(n) > 1;
                const PubSubLimits& ps = profile.pubsub_limits();
                row.estimated = i == Interface::uadp &&
                                n > ps.max_fields_per_dataset * ps.max_writers_per_group;
                report.rows.push_back(row);
            }
        }
    }
    return report;
}

} // namespace frame
} // namespace plcbench
