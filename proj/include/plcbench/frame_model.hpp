#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plcbench/profiles.hpp"

namespace plcbench {
namespace frame {

// Per-layer byte costs of the header stack as counted on the wire. The
// Ethernet share covers MAC header, FCS, preamble and start delimiter.
struct HeaderStack {
    int ethernet_overhead = 26;
    int ip_header = 20;
    int l4_header = 8;       // 8 for UDP, 20 for TCP
    int min_l3_payload = 46; // Ethernet pads shorter network layer payloads

    static HeaderStack udp() { return HeaderStack{26, 20, 8, 46}; }
    static HeaderStack tcp() { return HeaderStack{26, 20, 20, 46}; }
};

// Full frame size for a given network layer payload (IP header included).
std::int64_t ethernet_frame_size(std::int64_t l3_bytes,
                                 const HeaderStack& stack = HeaderStack::udp());

// A bare acknowledge segment is a minimum-size frame.
inline constexpr std::int64_t kTcpAckBytes = 72;

// The nine message shapes whose sizes the toolkit reproduces exactly.
enum class MessageName {
    udp_data,
    tcp_data, // includes the 72 byte acknowledge it always triggers
    job,
    ack_data,
    write_request,
    write_response,
    read_request,
    read_response,
    dataset_message,
};

inline constexpr std::array<MessageName, 9> kAllMessages = {
    MessageName::udp_data,      MessageName::tcp_data,      MessageName::job,
    MessageName::ack_data,      MessageName::write_request, MessageName::write_response,
    MessageName::read_request,  MessageName::read_response, MessageName::dataset_message,
};

std::string_view to_string(MessageName m);
MessageName message_from_string(std::string_view name); // throws UnknownNameError

// Total bytes on the wire for one message carrying n 4 byte values,
// acknowledge included where the transport forces one.
std::int64_t message_size(MessageName m, int n);

enum class Direction { plc_to_edge, edge_to_plc };

struct ExchangeMessage {
    MessageName name;
    Direction direction;
};

// The message sequence one full update of n values needs on an interface.
struct ExchangePattern {
    Interface iface;
    std::vector<ExchangeMessage> messages;
    bool includes_tcp_ack = false; // ack bytes already inside the data message size
};

ExchangePattern exchange_pattern(Interface i);

// Bytes of one complete update of n values on a device, every frame and
// acknowledge counted, splits included. Throws UnsupportedInterfaceError.
std::int64_t exchange_total_bytes(Interface i, int n, const PlcProfile& profile);

// Useful payload of an update: n values of 4 bytes each.
inline std::int64_t payload_bytes(int n) { return 4LL * n; }

// payload / total as a fraction in [0, 1]. Polls that split into k exchanges
// report the single-exchange ratio divided by k, which matches how split
// results are published; the raw byte count stays available through
// exchange_total_bytes.
double protocol_efficiency(Interface i, int n, const PlcProfile& profile);

// Display rounding used everywhere an efficiency is printed: half-up to
// hundredths of a percent first, then half-up to tenths. Returns tenths of a
// percent as an integer, computed exactly.
int efficiency_pct_tenths(std::int64_t payload, std::int64_t total);

// Formats tenths of a percent, e.g. 744 -> "74.4".
std::string format_pct_tenths(int tenths);

struct EfficiencyRow {
    Interface iface = Interface::ouc_udp;
    Device device = Device::s7_314;
    int n = 1;
    bool supported = false;
    std::int64_t payload_bytes = 0;  // 0 when unsupported
    std::int64_t total_bytes = 0;    // payload / efficiency ratio basis
    std::int64_t exchange_bytes = 0; // real bytes on the wire, splits summed
    int efficiency_tenths = 0;
    bool estimated = false;     // arithmetic extends past device limits
    bool split_exchange = false; // poll needs more than one request/response
};

struct EfficiencyReport {
    std::vector<EfficiencyRow> rows; // interface-major, then device, then n
};

// One row per (interface, device, n); unsupported combinations appear with
// supported = false. Empty interface or n lists select the full grid
// (all six interfaces, n in {1, 10, 100}).
EfficiencyReport build_efficiency_report(const std::vector<Device>& devices = {
                                             Device::s7_314, Device::s7_1512},
                                         const std::vector<Interface>& interfaces = {},
                                         const std::vector<int>& n_values = {});

} // namespace frame
} // namespace plcbench
