#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plcbench {

enum class Device {
    s7_314,
    s7_1512,
};

// The five field-level interfaces covered by the toolkit. OPC UA client/server
// appears twice because the Write and Read service patterns behave differently
// on the wire and in time.
enum class Interface {
    ouc_udp,
    ouc_tcp,
    s7,
    opcua_write,
    opcua_read,
    uadp,
};

inline constexpr std::array<Interface, 6> kAllInterfaces = {
    Interface::ouc_udp,  Interface::ouc_tcp,     Interface::s7,
    Interface::opcua_write, Interface::opcua_read, Interface::uadp,
};

inline constexpr std::array<Device, 2> kAllDevices = {Device::s7_314, Device::s7_1512};

std::string_view to_string(Device d);
std::string_view to_string(Interface i);
Device device_from_string(std::string_view name);       // throws UnknownNameError
Interface interface_from_string(std::string_view name); // throws UnknownNameError

// Payload sizes are studied at three decades. Arbitrary n maps to the decade
// nearest in log scale: 1..3 -> 1, 4..31 -> 10, 32.. -> 100.
int value_bucket(int n);
int bucket_index(int n); // 0, 1 or 2

// How much metadata an interface carries alongside the raw values.
enum class MetadataLevel {
    none,    // receiver must know the layout in advance
    partial, // self-describing framing without per-value semantics
    full,    // typed, timestamped, addressable values
};

struct InterfaceTraits {
    Interface iface;
    std::string_view label;       // human readable, matches report rows
    bool plug_and_play;           // discoverable without out-of-band knowledge
    MetadataLevel metadata;
    bool tcp_based;               // carries the 72 byte acknowledge per data message
    bool plc_is_server;           // edge opens the exchange (request/response)
};

const InterfaceTraits& interface_traits(Interface i);

struct PubSubLimits {
    int max_fields_per_dataset = 10;
    int max_writers_per_group = 2;
};

// Everything the toolkit knows about one controller model. Update-time floors
// are stored per response; a poll that must be split into k exchanges takes
// k times the floor end to end.
class PlcProfile {
public:
    static const PlcProfile& stock(Device d);

    Device model() const { return model_; }
    std::string_view name() const { return name_; }

    // Largest protocol data unit the S7 transport negotiates, if limited.
    std::optional<int> pdu_limit() const { return pdu_limit_; }
    // Largest number of 4 byte values one S7 job may carry on this device.
    int max_values_per_job() const { return max_values_per_job_; }
    // How many request/response exchanges a poll of n values needs.
    int split_count(int n) const;

    const PubSubLimits& pubsub_limits() const { return pubsub_; }

    bool supports(Interface i) const;
    std::vector<Interface> supported_interfaces() const;

    // Fastest stable time between two consecutive responses carrying v values,
    // in microseconds. Throws UnsupportedInterfaceError.
    std::int64_t response_floor_us(Interface i, int v) const;
    // Fastest stable update time for a full poll of n values (all splits),
    // in microseconds. Throws UnsupportedInterfaceError.
    std::int64_t update_time_us(Interface i, int n) const;
    // True when the stored floor for this bucket was extrapolated rather than
    // observed on the device (the UADP decade beyond the dataset limits).
    bool update_time_estimated(Interface i, int n) const;

private:
    Device model_;
    std::string name_;
    std::optional<int> pdu_limit_;
    int max_values_per_job_ = 100;
    PubSubLimits pubsub_;
    // floors_us_[interface][bucket]; missing value = unsupported interface
    std::array<std::array<std::optional<std::int64_t>, 3>, 6> floors_us_{};
    std::array<std::array<bool, 3>, 6> estimated_{};

    friend PlcProfile make_profile_314();
    friend PlcProfile make_profile_1512();
};

} // namespace plcbench
