#include "plcbench/profiles.hpp"

#include <algorithm>
#include <cmath>

#include "plcbench/errors.hpp"

namespace plcbench {

std::string_view to_string(Device d) {
    switch (d) {
    case Device::s7_314: return "s7-314";
    case Device::s7_1512: return "s7-1512";
    }
    return "?";
}

std::string_view to_string(Interface i) {
    switch (i) {
    case Interface::ouc_udp: return "ouc-udp";
    case Interface::ouc_tcp: return "ouc-tcp";
    case Interface::s7: return "s7";
    case Interface::opcua_write: return "opcua-write";
    case Interface::opcua_read: return "opcua-read";
    case Interface::uadp: return "uadp";
    }
    return "?";
}

Device device_from_string(std::string_view name) {
    for (Device d : kAllDevices) {
        if (name == to_string(d)) {
            return d;
        }
    }
    if (name == "314") {
        return Device::s7_314;
    }
    if (name == "1512") {
        return Device::s7_1512;
    }
    throw UnknownNameError("unknown device profile: " + std::string(name));
}

Interface interface_from_string(std::string_view name) {
    for (Interface i : kAllInterfaces) {
        if (name == to_string(i)) {
            return i;
        }
    }
    throw UnknownNameError("unknown interface: " + std::string(name));
}

int bucket_index(int n) {
    if (n < 1) {
        throw InvalidConfigError("value count must be at least 1");
    }
    // Nearest decade in log scale; ties cannot occur for integer n.
    if (n <= 3) {
        return 0;
    }
    if (n <= 31) {
        return 1;
    }
    return 2;
}

int value_bucket(int n) {
    static constexpr int decades[3] = {1, 10, 100};
    return decades[bucket_index(n)];
}

const InterfaceTraits& interface_traits(Interface i) {
    static const std::array<InterfaceTraits, 6> traits = {{
        {Interface::ouc_udp, "OUC (UDP)", false, MetadataLevel::none, false, false},
        {Interface::ouc_tcp, "OUC (TCP)", false, MetadataLevel::none, true, false},
        {Interface::s7, "S7", true, MetadataLevel::none, true, true},
        {Interface::opcua_write, "OPC UA Write", false, MetadataLevel::full, true, false},
        {Interface::opcua_read, "OPC UA Read", true, MetadataLevel::full, true, true},
        {Interface::uadp, "OPC UA PubSub", false, MetadataLevel::partial, false, false},
    }};
    return traits[static_cast<size_t>(i)];
}

namespace {

constexpr size_t idx(Interface i) { return static_cast<size_t>(i); }

} // namespace

PlcProfile make_profile_314() {
    PlcProfile p;
    p.model_ = Device::s7_314;
    p.name_ = "s7-314";
    p.pdu_limit_ = 240;
    p.max_values_per_job_ = 50;
    // No PubSub stack on this generation at all; limits left at defaults but
    // the missing uadp floors mark the interface unsupported.
    p.floors_us_[idx(Interface::ouc_udp)] = {1000, 1000, 1000};
    p.floors_us_[idx(Interface::ouc_tcp)] = {1010, 1040, 1020};
    p.floors_us_[idx(Interface::s7)] = {2000, 2000, 2000};
    return p;
}

PlcProfile make_profile_1512() {
    PlcProfile p;
    p.model_ = Device::s7_1512;
    p.name_ = "s7-1512";
    p.pdu_limit_ = std::nullopt;
    p.max_values_per_job_ = 100;
    p.floors_us_[idx(Interface::ouc_udp)] = {3610, 3600, 3630};
    p.floors_us_[idx(Interface::ouc_tcp)] = {3770, 3780, 3830};
    p.floors_us_[idx(Interface::s7)] = {1320, 1320, 1400};
    p.floors_us_[idx(Interface::opcua_write)] = {6830, 7360, 16560};
    p.floors_us_[idx(Interface::opcua_read)] = {9110, 30350, 246100};
    p.floors_us_[idx(Interface::uadp)] = {1020, 1260, 2300};
    // One dataset carries at most 10 fields and one group at most 2 writers,
    // so the 100 value decade cannot be published; its floor is extrapolated.
    p.estimated_[idx(Interface::uadp)][2] = true;
    return p;
}

const PlcProfile& PlcProfile::stock(Device d) {
    static const PlcProfile p314 = make_profile_314();
    static const PlcProfile p1512 = make_profile_1512();
    return d == Device::s7_314 ? p314 : p1512;
}

int PlcProfile::split_count(int n) const {
    if (n < 1) {
        throw InvalidConfigError("value count must be at least 1");
    }
    return (n + max_values_per_job_ - 1) / max_values_per_job_;
}

bool PlcProfile::supports(Interface i) const {
    return floors_us_[idx(i)][0].has_value();
}

std::vector<Interface> PlcProfile::supported_interfaces() const {
    std::vector<Interface> out;
    for (Interface i : kAllInterfaces) {
        if (supports(i)) {
            out.push_back(i);
        }
    }
    return out;
}

std::int64_t PlcProfile::response_floor_us(Interface i, int v) const {
    const auto& cell = floors_us_[idx(i)][static_cast<size_t>(bucket_index(v))];
    if (!cell) {
        throw UnsupportedInterfaceError(std::string(to_string(model_)) +
                                        " does not support " + std::string(to_string(i)));
    }
    return *cell;
}

std::int64_t PlcProfile::update_time_us(Interface i, int n) const {
    std::int64_t floor = response_floor_us(i, n);
    int splits = i == Interface::s7 ? split_count(n) : 1;
    return floor * splits;
}

bool PlcProfile::update_time_estimated(Interface i, int n) const {
    if (!supports(i)) {
        return false;
    }
    return estimated_[idx(i)][static_cast<size_t>(bucket_index(n))];
}

} // namespace plcbench
