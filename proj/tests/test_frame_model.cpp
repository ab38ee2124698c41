#include <map>
#include <tuple>

#include "doctest.h"

#include "plcbench/errors.hpp"
#include "plcbench/frame_model.hpp"
#include "plcbench/profiles.hpp"

using namespace plcbench;
using namespace plcbench::frame;

namespace {

struct SizeTriple {
    MessageName name;
    std::int64_t at1, at10, at100;
};

const SizeTriple kPublishedSizes[] = {
    {MessageName::udp_data, 72, 94, 454},
    {MessageName::tcp_data, 144, 178, 538},
    {MessageName::job, 169, 169, 169},
    {MessageName::ack_data, 167, 203, 563},
    {MessageName::write_request, 234, 396, 2154},
    {MessageName::write_response, 202, 238, 598},
    {MessageName::read_request, 270, 756, 5778},
    {MessageName::read_response, 212, 338, 1598},
    {MessageName::dataset_message, 73, 118, 568},
};

} // namespace

TEST_CASE("published message sizes at the three decades") {
    for (const SizeTriple& row : kPublishedSizes) {
        CAPTURE(to_string(row.name));
        CHECK(message_size(row.name, 1) == row.at1);
        CHECK(message_size(row.name, 10) == row.at10);
        CHECK(message_size(row.name, 100) == row.at100);
    }
}

TEST_CASE("udp and tcp data recompute from the header stack") {
    for (int n = 1; n <= 100; ++n) {
        CHECK(message_size(MessageName::udp_data, n) ==
              ethernet_frame_size(4 * n + 28, HeaderStack::udp()));
        CHECK(message_size(MessageName::tcp_data, n) ==
              ethernet_frame_size(4 * n + 40, HeaderStack::tcp()) + kTcpAckBytes);
    }
}

TEST_CASE("ethernet frames pad short payloads to the minimum") {
    CHECK(ethernet_frame_size(46) == 72);
    CHECK(ethernet_frame_size(45) == 72);
    CHECK(ethernet_frame_size(1) == 72);
    CHECK(ethernet_frame_size(47) == 73);
    for (int n = 1; n <= 4; ++n) {
        CHECK(message_size(MessageName::udp_data, n) == 72);
    }
    CHECK(message_size(MessageName::udp_data, 5) == 74);
}

TEST_CASE("affine message families") {
    for (int n = 1; n <= 100; ++n) {
        CHECK(message_size(MessageName::job, n) == 169);
        CHECK(message_size(MessageName::ack_data, n) == 163 + 4 * n);
        CHECK(message_size(MessageName::write_response, n) == 198 + 4 * n);
        CHECK(message_size(MessageName::read_response, n) == 198 + 14 * n);
        CHECK(message_size(MessageName::dataset_message, n) == 68 + 5 * n);
    }
}

TEST_CASE("request sizes interpolate between the decades") {
    CHECK(message_size(MessageName::write_request, 5) == 306);
    CHECK(message_size(MessageName::read_request, 5) == 486);
    CHECK(message_size(MessageName::write_request, 55) == 1275);
    CHECK(message_size(MessageName::read_request, 55) == 3267);
}

TEST_CASE("message sizes never shrink with n") {
    for (MessageName m : kAllMessages) {
        CAPTURE(to_string(m));
        std::int64_t prev = message_size(m, 1);
        for (int n = 2; n <= 100; ++n) {
            const std::int64_t cur = message_size(m, n);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("message_size rejects non-positive counts") {
    CHECK_THROWS_AS(message_size(MessageName::udp_data, 0), InvalidConfigError);
    CHECK_THROWS_AS(message_size(MessageName::job, -3), InvalidConfigError);
}

TEST_CASE("message names round-trip through strings") {
    for (MessageName m : kAllMessages) {
        CHECK(message_from_string(to_string(m)) == m);
    }
    CHECK_THROWS_AS(message_from_string("nonsense"), UnknownNameError);
}

TEST_CASE("exchange totals per interface") {
    const PlcProfile& p314 = PlcProfile::stock(Device::s7_314);
    const PlcProfile& p1512 = PlcProfile::stock(Device::s7_1512);

    CHECK(exchange_total_bytes(Interface::ouc_udp, 1, p1512) == 72);
    CHECK(exchange_total_bytes(Interface::ouc_tcp, 10, p1512) == 178);
    CHECK(exchange_total_bytes(Interface::s7, 1, p1512) == 169 + 167);
    CHECK(exchange_total_bytes(Interface::s7, 100, p1512) == 169 + 563);
    CHECK(exchange_total_bytes(Interface::opcua_write, 10, p1512) == 396 + 238);
    CHECK(exchange_total_bytes(Interface::opcua_read, 100, p1512) == 5778 + 1598);
    CHECK(exchange_total_bytes(Interface::uadp, 1, p1512) == 73);

    // split poll: two jobs, two acks, the 400 data bytes spread across both
    CHECK(exchange_total_bytes(Interface::s7, 100, p314) == 2 * (169 + 163) + 400);
    CHECK_THROWS_AS(exchange_total_bytes(Interface::opcua_read, 1, p314),
                    UnsupportedInterfaceError);
}

TEST_CASE("two-stage display rounding") {
    // 29/20000 = 0.145 %: hundredths round to 0.15, tenths to 0.2. A single
    // half-up pass at tenths would print 0.1.
    CHECK(efficiency_pct_tenths(29, 20000) == 2);
    CHECK(efficiency_pct_tenths(400, 454) == 881);
    CHECK(efficiency_pct_tenths(4, 72) == 56);
    CHECK(efficiency_pct_tenths(400, 1464) == 273);
    CHECK(format_pct_tenths(744) == "74.4");
    CHECK(format_pct_tenths(56) == "5.6");
    CHECK(format_pct_tenths(0) == "0.0");
}

TEST_CASE("published efficiencies") {
    // tenths of a percent keyed by interface, device, n
    std::map<std::tuple<Interface, Device, int>, int> expect;
    const auto put = [&](Interface i, Device d, int n, int tenths) {
        expect[{i, d, n}] = tenths;
    };
    for (Device d : kAllDevices) {
        put(Interface::ouc_udp, d, 1, 56);
        put(Interface::ouc_udp, d, 10, 426);
        put(Interface::ouc_udp, d, 100, 881);
        put(Interface::ouc_tcp, d, 1, 28);
        put(Interface::ouc_tcp, d, 10, 225);
        put(Interface::ouc_tcp, d, 100, 744);
        put(Interface::s7, d, 1, 12);
        put(Interface::s7, d, 10, 108);
    }
    put(Interface::s7, Device::s7_1512, 100, 546);
    put(Interface::s7, Device::s7_314, 100, 273); // split halves the ratio
    put(Interface::opcua_write, Device::s7_1512, 1, 9);
    put(Interface::opcua_write, Device::s7_1512, 10, 63);
    put(Interface::opcua_write, Device::s7_1512, 100, 145);
    put(Interface::opcua_read, Device::s7_1512, 1, 8);
    put(Interface::opcua_read, Device::s7_1512, 10, 37);
    put(Interface::opcua_read, Device::s7_1512, 100, 54);
    put(Interface::uadp, Device::s7_1512, 1, 55);
    put(Interface::uadp, Device::s7_1512, 10, 339);
    put(Interface::uadp, Device::s7_1512, 100, 704);

    const EfficiencyReport report = build_efficiency_report();
    REQUIRE(report.rows.size() == 36);
    int checked = 0;
    for (const EfficiencyRow& row : report.rows) {
        const auto it = expect.find({row.iface, row.device, row.n});
        CAPTURE(to_string(row.iface));
        CAPTURE(to_string(row.device));
        CAPTURE(row.n);
        if (it == expect.end()) {
            CHECK_FALSE(row.supported);
            CHECK(row.payload_bytes == 0);
            continue;
        }
        CHECK(row.supported);
        CHECK(row.efficiency_tenths == it->second);
        CHECK(row.payload_bytes == 4 * row.n);
        ++checked;
    }
    CHECK(checked == 27);
}

TEST_CASE("split and estimated markers in the efficiency report") {
    const EfficiencyReport report = build_efficiency_report();
    for (const EfficiencyRow& row : report.rows) {
        const bool split = row.iface == Interface::s7 && row.device == Device::s7_314 &&
                           row.n == 100;
        const bool est = row.iface == Interface::uadp && row.supported && row.n == 100;
        CHECK(row.split_exchange == split);
        CHECK(row.estimated == est);
        if (split) {
            CHECK(row.exchange_bytes == 1064);
            CHECK(row.total_bytes == 1464);
        }
    }
}

TEST_CASE("efficiency report respects filters and ordering") {
    const EfficiencyReport filtered = build_efficiency_report(
        {Device::s7_314}, {Interface::s7, Interface::ouc_udp}, {1, 100});
    REQUIRE(filtered.rows.size() == 4);
    CHECK(filtered.rows[0].iface == Interface::s7);
    CHECK(filtered.rows[0].n == 1);
    CHECK(filtered.rows[1].n == 100);
    CHECK(filtered.rows[2].iface == Interface::ouc_udp);

    const EfficiencyReport grid = build_efficiency_report();
    size_t k = 0;
    for (Interface i : kAllInterfaces) {
        for (Device d : kAllDevices) {
            for (int n : {1, 10, 100}) {
                CHECK(grid.rows[k].iface == i);
                CHECK(grid.rows[k].device == d);
                CHECK(grid.rows[k].n == n);
                ++k;
            }
        }
    }
}

TEST_CASE("value buckets split at 3|4 and 31|32") {
    CHECK(value_bucket(1) == 1);
    CHECK(value_bucket(3) == 1);
    CHECK(value_bucket(4) == 10);
    CHECK(value_bucket(31) == 10);
    CHECK(value_bucket(32) == 100);
    CHECK(value_bucket(100) == 100);
    CHECK(value_bucket(5000) == 100);
    CHECK(bucket_index(2) == 0);
    CHECK(bucket_index(10) == 1);
    CHECK(bucket_index(64) == 2);
}

TEST_CASE("interface traits") {
    CHECK(interface_traits(Interface::ouc_udp).label == "OUC (UDP)");
    CHECK(interface_traits(Interface::ouc_tcp).label == "OUC (TCP)");
    CHECK(interface_traits(Interface::s7).label == "S7");
    CHECK(interface_traits(Interface::opcua_write).label == "OPC UA Write");
    CHECK(interface_traits(Interface::opcua_read).label == "OPC UA Read");
    CHECK(interface_traits(Interface::uadp).label == "OPC UA PubSub");

    for (Interface i : kAllInterfaces) {
        const InterfaceTraits& t = interface_traits(i);
        CHECK(t.iface == i);
        CHECK(t.plug_and_play == (i == Interface::s7 || i == Interface::opcua_read));
        CHECK(t.plc_is_server == (i == Interface::s7 || i == Interface::opcua_read));
        CHECK(t.tcp_based == (i != Interface::ouc_udp && i != Interface::uadp));
    }
    CHECK(interface_traits(Interface::ouc_udp).metadata == MetadataLevel::none);
    CHECK(interface_traits(Interface::s7).metadata == MetadataLevel::none);
    CHECK(interface_traits(Interface::opcua_write).metadata == MetadataLevel::full);
    CHECK(interface_traits(Interface::opcua_read).metadata == MetadataLevel::full);
    CHECK(interface_traits(Interface::uadp).metadata == MetadataLevel::partial);
}

TEST_CASE("device capabilities") {
    const PlcProfile& p314 = PlcProfile::stock(Device::s7_314);
    const PlcProfile& p1512 = PlcProfile::stock(Device::s7_1512);

    CHECK(p314.pdu_limit() == 240);
    CHECK_FALSE(p1512.pdu_limit().has_value());
    CHECK(p314.max_values_per_job() == 50);
    CHECK(p1512.max_values_per_job() == 100);

    CHECK(p314.supported_interfaces() ==
          std::vector<Interface>{Interface::ouc_udp, Interface::ouc_tcp, Interface::s7});
    CHECK(p1512.supported_interfaces().size() == 6);
    CHECK_FALSE(p314.supports(Interface::opcua_read));
    CHECK(p1512.supports(Interface::uadp));

    CHECK(p314.split_count(50) == 1);
    CHECK(p314.split_count(51) == 2);
    CHECK(p314.split_count(100) == 2);
    CHECK(p1512.split_count(100) == 1);
}

TEST_CASE("update time floors") {
    const PlcProfile& p314 = PlcProfile::stock(Device::s7_314);
    const PlcProfile& p1512 = PlcProfile::stock(Device::s7_1512);

    CHECK(p314.update_time_us(Interface::ouc_udp, 1) == 1000);
    CHECK(p314.update_time_us(Interface::ouc_tcp, 10) == 1040);
    CHECK(p314.update_time_us(Interface::s7, 10) == 2000);
    CHECK(p314.update_time_us(Interface::s7, 100) == 4000); // two split exchanges
    CHECK(p314.response_floor_us(Interface::s7, 100) == 2000);

    CHECK(p1512.update_time_us(Interface::ouc_udp, 1) == 3610);
    CHECK(p1512.update_time_us(Interface::s7, 1) == 1320);
    CHECK(p1512.update_time_us(Interface::opcua_write, 100) == 16560);
    CHECK(p1512.update_time_us(Interface::opcua_read, 10) == 30350);
    CHECK(p1512.update_time_us(Interface::opcua_read, 100) == 246100);
    CHECK(p1512.update_time_us(Interface::uadp, 100) == 2300);

    // arbitrary n lands in the nearest decade
    CHECK(p1512.update_time_us(Interface::opcua_read, 4) == 30350);
    CHECK(p1512.update_time_us(Interface::opcua_read, 32) == 246100);

    CHECK(p1512.update_time_estimated(Interface::uadp, 100));
    CHECK_FALSE(p1512.update_time_estimated(Interface::uadp, 10));
    CHECK_FALSE(p314.update_time_estimated(Interface::s7, 100));

    CHECK_THROWS_AS(p314.update_time_us(Interface::opcua_read, 1),
                    UnsupportedInterfaceError);
}

TEST_CASE("names round-trip") {
    for (Device d : kAllDevices) {
        CHECK(device_from_string(to_string(d)) == d);
    }
    for (Interface i : kAllInterfaces) {
        CHECK(interface_from_string(to_string(i)) == i);
    }
    CHECK(device_from_string("314") == Device::s7_314);
    CHECK(device_from_string("s7-1512") == Device::s7_1512);
    CHECK_THROWS_AS(device_from_string("s5"), UnknownNameError);
    CHECK_THROWS_AS(interface_from_string("profinet"), UnknownNameError);
}
