#include <string>

#include "doctest.h"

#include "plcbench/errors.hpp"
#include "plcbench/report/report.hpp"

using namespace plcbench;
using namespace plcbench::report;

namespace {

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("fnv1a64 reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("config stamps") {
    CHECK(config_stamp("") == "cbf29ce484222325");
    CHECK(config_stamp("x").size() == 16);
    CHECK(config_stamp("run A") == config_stamp("run A"));
    CHECK(config_stamp("run A") != config_stamp("run B"));
}

TEST_CASE("format names") {
    CHECK(format_from_string("csv") == Format::csv);
    CHECK(format_from_string("md") == Format::markdown);
    CHECK(format_from_string("markdown") == Format::markdown);
    CHECK_THROWS_AS(format_from_string("pdf"), UnknownNameError);
    CHECK(to_string(Format::csv) == "csv");
    CHECK(file_extension(Format::markdown) == "md");
}

TEST_CASE("message size table") {
    const std::string csv = message_size_table(Format::csv, "sizes");
    CHECK(csv.rfind("# plcbench ", 0) == 0);
    CHECK(contains(csv, "config=" + config_stamp("sizes")));
    CHECK(contains(csv, "message,n,wire_bytes\n"));
    CHECK(contains(csv, "udp-data,1,72\n"));
    CHECK(contains(csv, "tcp-data,100,538\n"));
    CHECK(contains(csv, "job,10,169\n"));
    CHECK(contains(csv, "read-request,100,5778\n"));
    CHECK(contains(csv, "dataset-message,10,118\n"));

    const std::string md = message_size_table(Format::markdown, "sizes");
    CHECK(md.rfind("<!-- plcbench ", 0) == 0);
    CHECK(contains(md, "| udp-data | 72 | 94 | 454 |"));
    CHECK(contains(md, "| write-request | 234 | 396 | 2154 |"));

    CHECK(message_size_table(Format::csv, "sizes") == csv); // deterministic
}

TEST_CASE("comparison table in csv") {
    const std::string csv = interface_comparison_table(Format::csv, "cmp");
    CHECK(contains(csv, "interface,device,n,plug_and_play,metadata,efficiency_pct,"
                        "total_bytes,payload_bytes,update_ms,estimated,split\n"));
    CHECK(contains(csv, "ouc-udp,s7-314,10,-,-,42.6,94,40,1.00,,\n"));
    CHECK(contains(csv, "ouc-tcp,s7-1512,100,-,-,74.4,538,400,3.83,,\n"));
    CHECK(contains(csv, "s7,s7-314,100,+,-,27.3,1464,400,4.00,,split\n"));
    CHECK(contains(csv, "s7,s7-1512,100,+,-,54.6,732,400,1.40,,\n"));
    CHECK(contains(csv, "opcua-read,s7-1512,100,+,+,5.4,7376,400,246.10,,\n"));
    CHECK(contains(csv, "uadp,s7-1512,100,-,o,70.4,568,400,2.30,estimated,\n"));
    CHECK(contains(csv, "opcua-read,s7-314,1,+,+,n/a,n/a,n/a,n/a,,\n"));
}

TEST_CASE("comparison table in markdown") {
    const std::string md = interface_comparison_table(Format::markdown, "cmp");
    CHECK(contains(md, "| Interface | P&P | Meta | n | Efficiency % | s7-314 ms | "
                       "s7-1512 ms |"));
    CHECK(contains(md, "| OUC (UDP) | - | - | 1 | 5.6 | 1.00 | 3.61 |"));
    CHECK(contains(md, "| S7 | + | - | 100 | 27.3 (split) / 54.6 | 4.00 | 1.40 |"));
    CHECK(contains(md, "| OPC UA Read | + | + | 100 | 5.4 | n/a | 246.10 |"));
    CHECK(contains(md, "| OPC UA PubSub | - | o | 100 | 70.4 | n/a | 2.30 (est) |"));
}

TEST_CASE("override selection works by decade, later entries win") {
    std::vector<UpdateOverride> overrides;
    overrides.push_back({Interface::ouc_udp, Device::s7_1512, 10, 3600.0});
    overrides.push_back({Interface::ouc_udp, Device::s7_1512, 12, 3777.0});

    const UpdateOverride* hit = find_override(overrides, Interface::ouc_udp,
                                              Device::s7_1512, 4);
    REQUIRE(hit != nullptr);
    CHECK(hit->update_us == 3777.0);

    CHECK(find_override(overrides, Interface::ouc_udp, Device::s7_1512, 1) == nullptr);
    CHECK(find_override(overrides, Interface::ouc_udp, Device::s7_314, 10) == nullptr);
    CHECK(find_override(overrides, Interface::ouc_tcp, Device::s7_1512, 10) == nullptr);
    CHECK(find_override({}, Interface::ouc_udp, Device::s7_1512, 10) == nullptr);
}

TEST_CASE("measured overrides replace floors and drop the estimate marker") {
    TableOptions opts;
    opts.overrides.push_back({Interface::uadp, Device::s7_1512, 100, 2333.0});
    opts.overrides.push_back({Interface::ouc_udp, Device::s7_314, 10, 4321.0});

    const std::string csv = interface_comparison_table(Format::csv, "cmp", opts);
    CHECK(contains(csv, "uadp,s7-1512,100,-,o,70.4,568,400,2.33,,\n"));
    CHECK(contains(csv, "ouc-udp,s7-314,10,-,-,42.6,94,40,4.32,,\n"));
    CHECK_FALSE(contains(csv, "2.33,estimated"));
    CHECK_FALSE(contains(csv, "2.30,estimated"));

    const std::string md = interface_comparison_table(Format::markdown, "cmp", opts);
    CHECK(contains(md, "| OPC UA PubSub | - | o | 100 | 70.4 | n/a | 2.33 |"));
    CHECK_FALSE(contains(md, "2.33 (est)"));
    CHECK_FALSE(contains(md, "2.30 (est)"));
}

TEST_CASE("table filters narrow the grid") {
    TableOptions opts;
    opts.devices = {Device::s7_314};
    opts.interfaces = {Interface::s7};
    opts.n_values = {50};
    const std::string csv = interface_comparison_table(Format::csv, "one", opts);
    CHECK(contains(csv, "s7,s7-314,50,+,-,37.6,532,200,2.00,,\n"));
    CHECK_FALSE(contains(csv, "ouc-udp"));
    CHECK_FALSE(contains(csv, "s7-1512"));
}

TEST_CASE("break-even table renders both formats") {
    const std::vector<offload::BreakEvenCell> cells = offload::build_breakeven_table();

    const std::string csv = breakeven_table(cells, Format::csv, "be");
    CHECK(contains(csv, "interface,device,n,n_break_even,estimated\n"));
    CHECK(contains(csv, "ouc-udp,s7-314,1,54,\n"));
    CHECK(contains(csv, "s7,s7-314,100,207,\n"));
    CHECK(contains(csv, "opcua-read,s7-1512,100,6753,\n"));
    CHECK(contains(csv, "uadp,s7-1512,100,66,estimated\n"));
    CHECK(contains(csv, "opcua-read,s7-314,1,n/a,\n"));

    const std::string md = breakeven_table(cells, Format::markdown, "be");
    CHECK(contains(md, "| Interface | Device | n=1 | n=10 | n=100 |"));
    CHECK(contains(md, "| OUC (UDP) | s7-314 | 54 | 54 | 54 |"));
    CHECK(contains(md, "| S7 | s7-314 | 104 | 104 | 207 |"));
    CHECK(contains(md, "| OPC UA Read | s7-1512 | 253 | 835 | 6753 |"));
    CHECK(contains(md, "| OPC UA PubSub | s7-1512 | 31 | 37 | 66 (est) |"));
    CHECK(contains(md, "| OPC UA Write | s7-314 | n/a | n/a | n/a |"));

    const std::string empty = breakeven_table({}, Format::markdown, "be");
    CHECK(contains(empty, "(no cells selected)"));
}
