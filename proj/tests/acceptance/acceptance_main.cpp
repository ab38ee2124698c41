// Acceptance gate: one PASS/FAIL line per criterion, exit 0 only when every
// selected criterion passes. --only <k> runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "plcbench/emulator/emulator.hpp"
#include "plcbench/errors.hpp"
#include "plcbench/frame_model.hpp"
#include "plcbench/harness/measurement.hpp"
#include "plcbench/offload_model.hpp"
#include "plcbench/profiles.hpp"
#include "plcbench/wire/codecs.hpp"
#include "plcbench/wire/selftest.hpp"

using namespace plcbench;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    std::ostringstream detail;

    void fail(const std::string& what) {
        pass = false;
        if (detail.tellp() > 0) {
            detail << "; ";
        }
        detail << what;
    }
};

// --- criterion 1: published message sizes ----------------------------------

Outcome check_message_sizes() {
    struct Row {
        frame::MessageName name;
        std::int64_t sizes[3];
    };
    const Row rows[] = {
        {frame::MessageName::udp_data, {72, 94, 454}},
        {frame::MessageName::tcp_data, {144, 178, 538}},
        {frame::MessageName::job, {169, 169, 169}},
        {frame::MessageName::ack_data, {167, 203, 563}},
        {frame::MessageName::write_request, {234, 396, 2154}},
        {frame::MessageName::write_response, {202, 238, 598}},
        {frame::MessageName::read_request, {270, 756, 5778}},
        {frame::MessageName::read_response, {212, 338, 1598}},
        {frame::MessageName::dataset_message, {73, 118, 568}},
    };
    const int decades[3] = {1, 10, 100};
    Outcome out;
    int checked = 0;
    for (const Row& row : rows) {
        for (int k = 0; k < 3; ++k) {
            const std::int64_t got = frame::message_size(row.name, decades[k]);
            if (got != row.sizes[k]) {
                std::ostringstream what;
                what << frame::to_string(row.name) << " n=" << decades[k] << ": " << got
                     << " != " << row.sizes[k];
                out.fail(what.str());
            }
            ++checked;
        }
    }
    std::ostringstream s;
    s << checked << "/27 published message sizes bit-exact, tolerance 0";
    out.summary = s.str();
    return out;
}

// --- criterion 2: published efficiencies ------------------------------------

Outcome check_efficiencies() {
    std::map<std::tuple<Interface, Device, int>, int> expect;
    const auto put = [&](Interface i, int a, int b, int c) {
        for (Device d : kAllDevices) {
            expect[{i, d, 1}] = a;
            expect[{i, d, 10}] = b;
            expect[{i, d, 100}] = c;
        }
    };
    put(Interface::ouc_udp, 56, 426, 881);
    put(Interface::ouc_tcp, 28, 225, 744);
    put(Interface::s7, 12, 108, 546);
    expect[{Interface::s7, Device::s7_314, 100}] = 273; // split poll halves the ratio
    put(Interface::opcua_write, 9, 63, 145);
    put(Interface::opcua_read, 8, 37, 54);
    put(Interface::uadp, 55, 339, 704);

    Outcome out;
    int checked = 0;
    const frame::EfficiencyReport report = frame::build_efficiency_report();
    for (const frame::EfficiencyRow& row : report.rows) {
        if (!row.supported) {
            continue;
        }
        const int want = expect.at({row.iface, row.device, row.n});
        std::ostringstream where;
        where << to_string(row.iface) << "/" << to_string(row.device) << "/n=" << row.n;
        if (row.efficiency_tenths != want) {
            out.fail(where.str() + ": " + frame::format_pct_tenths(row.efficiency_tenths) +
                     " != " + frame::format_pct_tenths(want));
        }
        const bool want_est = row.iface == Interface::uadp && row.n == 100;
        if (row.estimated != want_est) {
            out.fail(where.str() + ": estimated flag off");
        }
        const bool want_split =
            row.iface == Interface::s7 && row.device == Device::s7_314 && row.n == 100;
        if (row.split_exchange != want_split) {
            out.fail(where.str() + ": split flag off");
        }
        ++checked;
    }
    if (checked != 27) {
        out.fail("expected 27 supported cells, saw " + std::to_string(checked));
    }
    std::ostringstream s;
    s << checked
      << " efficiency cells match to one decimal percent (half-up), split and "
         "estimate flags included";
    out.summary = s.str();
    return out;
}

// --- criterion 3: published break-even counts -------------------------------

Outcome check_breakeven() {
    std::map<std::tuple<Interface, Device, int>, std::int64_t> expect;
    const auto put = [&](Interface i, Device d, std::int64_t a, std::int64_t b,
                         std::int64_t c) {
        expect[{i, d, 1}] = a;
        expect[{i, d, 10}] = b;
        expect[{i, d, 100}] = c;
    };
    put(Interface::ouc_udp, Device::s7_314, 54, 54, 54);
    put(Interface::ouc_tcp, Device::s7_314, 55, 56, 55);
    put(Interface::s7, Device::s7_314, 104, 104, 207);
    put(Interface::ouc_udp, Device::s7_1512, 102, 102, 102);
    put(Interface::ouc_tcp, Device::s7_1512, 106, 106, 108);
    put(Interface::s7, Device::s7_1512, 39, 39, 41);
    put(Interface::opcua_write, Device::s7_1512, 190, 205, 457);
    put(Interface::opcua_read, Device::s7_1512, 253, 835, 6753);
    put(Interface::uadp, Device::s7_1512, 31, 37, 66);

    Outcome out;
    int checked = 0;
    for (const offload::BreakEvenCell& cell : offload::build_breakeven_table()) {
        if (!cell.supported) {
            continue;
        }
        const std::int64_t want = expect.at({cell.iface, cell.device, cell.n});
        std::ostringstream where;
        where << to_string(cell.iface) << "/" << to_string(cell.device) << "/n=" << cell.n;
        if (cell.n_break_even != want) {
            out.fail(where.str() + ": " + std::to_string(cell.n_break_even) +
                     " != " + std::to_string(want));
        }
        const bool want_est = cell.iface == Interface::uadp && cell.n == 100;
        if (cell.estimated != want_est) {
            out.fail(where.str() + ": estimated flag off");
        }
        ++checked;
    }
    if (checked != 27) {
        out.fail("expected 27 supported cells, saw " + std::to_string(checked));
    }
    std::ostringstream s;
    s << checked << " break-even cells reproduced by the ceiling formula with stock "
                    "constants, uadp n=100 flagged estimated";
    out.summary = s.str();
    return out;
}

// --- criterion 4: digit requirements and the error bound ---------------------

Outcome check_digits() {
    struct Row {
        int digits;
        std::int64_t table_n;
        const char* prefix;
        std::int64_t minimal_n;
    };
    const Row rows[] = {
        {1, 2, "3", 2},
        {2, 32, "3.1", 18},
        {3, 1000, "3.14", 118},
        {4, 10000, "3.141", 1687},
        {5, 100000, "3.141", 10793},
        {6, 1000000, "3.14159", 136120},
    };
    Outcome out;
    for (const Row& row : rows) {
        const offload::DigitsRequirement d = offload::digits_required(row.digits);
        if (d.table_n != row.table_n || d.prefix != row.prefix ||
            d.minimal_n != row.minimal_n) {
            std::ostringstream what;
            what << "digits=" << row.digits << ": {" << d.table_n << ", " << d.prefix
                 << ", " << d.minimal_n << "} != {" << row.table_n << ", " << row.prefix
                 << ", " << row.minimal_n << "}";
            out.fail(what.str());
        }
    }

    std::vector<std::int64_t> samples = {0};
    for (std::int64_t n = 1; n < 1000000; n *= 2) {
        samples.push_back(n);
    }
    for (std::int64_t n = 10; n < 1000000; n *= 10) {
        samples.push_back(n);
    }
    samples.push_back(1000000);
    int bound_checks = 0;
    for (std::int64_t n : samples) {
        const double err = std::abs(offload::leibniz_pi(n) - std::numbers::pi);
        if (err > offload::leibniz_error_bound(n)) {
            out.fail("error bound violated at n=" + std::to_string(n));
        }
        ++bound_checks;
    }
    std::ostringstream s;
    s << "6/6 digit-requirement rows exact; alternating-series bound holds at "
      << bound_checks << " log-sampled n in [0, 1e6]";
    out.summary = s.str();
    return out;
}

// --- criterion 5: codec round-trips and size conformance ---------------------

Outcome check_roundtrips() {
    Outcome out;
    const std::vector<wire::SelftestResult> results = wire::roundtrip_selftest(1000, 42);
    std::int64_t cases = 0;
    for (const wire::SelftestResult& r : results) {
        cases += r.cases;
        if (!r.ok) {
            out.fail(r.check + ": " + r.detail);
        }
    }
    std::ostringstream s;
    s << "decode(encode(m)) == m for 1000 random messages per codec and encoded "
         "sizes match the frame model ("
      << cases << " cases)";
    out.summary = s.str();
    return out;
}

// --- criterion 6: measured update-time floors --------------------------------

struct MeasuredCell {
    Device device;
    Interface iface;
    int n;
};

emu::EmulatorConfig cell_emulator_config(const MeasuredCell& cell, std::uint16_t port) {
    emu::EmulatorConfig cfg;
    cfg.profile = cell.device;
    switch (cell.iface) {
    case Interface::ouc_udp: {
        emu::OucPushConfig push;
        push.port = port;
        push.n = cell.n;
        cfg.ouc_udp_push = push;
        break;
    }
    case Interface::ouc_tcp: {
        emu::OucPushConfig push;
        push.port = port;
        push.n = cell.n;
        cfg.ouc_tcp_push = push;
        break;
    }
    case Interface::s7:
        cfg.s7_server = emu::S7ServerConfig{"127.0.0.1", port};
        break;
    case Interface::opcua_read:
        cfg.opcua_server = emu::OpcUaServerConfig{"127.0.0.1", port, 1, 0};
        break;
    case Interface::opcua_write: {
        emu::OpcUaWritePushConfig push;
        push.port = port;
        push.n = cell.n;
        cfg.opcua_write_push = push;
        break;
    }
    case Interface::uadp: {
        emu::UadpPublishConfig pub;
        pub.port = port;
        pub.pubsub = emu::default_pubsub(cell.n);
        cfg.uadp_publish = pub;
        break;
    }
    }
    return cfg;
}

Outcome check_update_floors() {
    std::vector<MeasuredCell> cells;
    for (Device d : kAllDevices) {
        const PlcProfile& profile = PlcProfile::stock(d);
        for (Interface i : profile.supported_interfaces()) {
            for (int n : {1, 10, 100}) {
                if (i == Interface::uadp && n == 100) {
                    continue; // no layout publishes 100 fields on the device
                }
                cells.push_back({d, i, n});
            }
        }
    }

    Outcome out;
    std::uint16_t port = 37100;
    int passed = 0;
    for (const MeasuredCell& cell : cells) {
        const PlcProfile& profile = PlcProfile::stock(cell.device);
        const std::int64_t floor_us = profile.update_time_us(cell.iface, cell.n);

        harness::MeasurementConfig mc;
        mc.iface = cell.iface;
        mc.device = cell.device;
        mc.n = cell.n;
        mc.port = port;
        if (floor_us < 5000) {
            mc.samples = 155;
            mc.warmup = 50;
        } else if (floor_us < 20000) {
            mc.samples = 80;
            mc.warmup = 20;
        } else {
            mc.samples = 40;
            mc.warmup = 5;
        }

        std::ostringstream where;
        where << to_string(cell.iface) << "/" << to_string(cell.device)
              << "/n=" << cell.n;
        try {
            emu::Emulator emulator(cell_emulator_config(cell, port));
            emulator.start();
            const harness::MeasurementRun run = harness::run_measurement(mc);
            emulator.stop();
            const harness::UpdateTimeStats stats = harness::summarize(run);
            const double ceiling = 1.05 * static_cast<double>(floor_us);
            if (stats.min_us < floor_us ||
                static_cast<double>(stats.min_us) > ceiling) {
                std::ostringstream what;
                what << where.str() << ": min " << stats.min_us << " us outside ["
                     << floor_us << ", " << ceiling << "]";
                out.fail(what.str());
            } else {
                ++passed;
            }
        } catch (const Error& e) {
            out.fail(where.str() + ": " + e.what());
        }
        ++port;
    }
    std::ostringstream s;
    s << passed << "/" << cells.size()
      << " supported cells measured with min in [T, 1.05*T] of the profile floor "
         "(uadp n=100 excluded: the device cannot publish more than 20 fields)";
    out.summary = s.str();
    return out;
}

// --- criterion 7: device limits -----------------------------------------------

Outcome check_limits() {
    Outcome out;
    const PlcProfile& p314 = PlcProfile::stock(Device::s7_314);
    const PlcProfile& p1512 = PlcProfile::stock(Device::s7_1512);
    int checks = 0;

    // A 100-value poll on the smaller device always becomes two 50-value jobs;
    // any n splits into ceil(n/50) jobs that cover the range exactly.
    for (int n = 1; n <= 100; ++n) {
        wire::S7ReadSpec spec;
        spec.value_count = n;
        const std::vector<wire::S7Message> jobs = wire::split_for_pdu(spec, p314);
        const int want_jobs = (n + 49) / 50;
        if (static_cast<int>(jobs.size()) != want_jobs) {
            out.fail("n=" + std::to_string(n) + ": " + std::to_string(jobs.size()) +
                     " jobs != " + std::to_string(want_jobs));
        }
        std::int64_t covered = 0;
        std::uint32_t next_offset = 0;
        for (const wire::S7Message& job : jobs) {
            if (job.item.byte_count > 200) {
                out.fail("n=" + std::to_string(n) + ": job exceeds 50 values");
            }
            if (job.item.start_offset != next_offset) {
                out.fail("n=" + std::to_string(n) + ": jobs are not contiguous");
            }
            next_offset += job.item.byte_count;
            covered += job.item.byte_count;
        }
        if (covered != 4 * static_cast<std::int64_t>(n)) {
            out.fail("n=" + std::to_string(n) + ": split loses bytes");
        }
        if (wire::split_for_pdu(spec, p1512).size() != 1) {
            out.fail("n=" + std::to_string(n) + ": the larger device split a single job");
        }
        ++checks;
    }
    if (wire::split_for_pdu({1, 0, 100, 1}, p314).size() != 2) {
        out.fail("n=100 did not split into two exchanges");
    }

    // PubSub layout caps: >10 fields per dataset and >2 writers per group never
    // pass validation or the codec; 1..20 fields lay out fine, 21..100 cannot.
    for (int n = 1; n <= 100; ++n) {
        if (n <= 20) {
            try {
                emu::validate_pubsub(emu::default_pubsub(n), p1512);
            } catch (const Error& e) {
                out.fail("pubsub n=" + std::to_string(n) + " rejected: " + e.what());
            }
        } else {
            try {
                emu::default_pubsub(n);
                out.fail("pubsub n=" + std::to_string(n) + " accepted past the cap");
            } catch (const LimitExceededError&) {
            }
        }
        ++checks;
    }
    {
        emu::PubSubConfig fat = emu::default_pubsub(10);
        fat.groups[0].writers[0].field_count = 11;
        try {
            emu::validate_pubsub(fat, p1512);
            out.fail("11-field dataset accepted");
        } catch (const LimitExceededError&) {
        }
        emu::PubSubConfig crowded = emu::default_pubsub(20);
        crowded.groups[0].writers.push_back(emu::PubSubWriter{3, 1});
        try {
            emu::validate_pubsub(crowded, p1512);
            out.fail("3-writer group accepted");
        } catch (const LimitExceededError&) {
        }
        wire::UadpDataSetMessage dsm;
        dsm.fields.assign(11, wire::UadpField{});
        wire::UadpNetworkMessage too_fat;
        too_fat.writers = {dsm};
        try {
            wire::encode(too_fat);
            out.fail("codec encoded an 11-field dataset");
        } catch (const LimitExceededError&) {
        }
        wire::UadpDataSetMessage one;
        one.fields = {wire::UadpField{}};
        wire::UadpNetworkMessage three;
        three.writers = {one, one, one};
        try {
            wire::encode(three);
            out.fail("codec encoded a 3-writer group");
        } catch (const LimitExceededError&) {
        }
        checks += 4;
    }

    // The smaller device has no OPC UA or PubSub endpoints at all.
    for (Interface i : {Interface::opcua_write, Interface::opcua_read, Interface::uadp}) {
        for (int n = 1; n <= 100; ++n) {
            try {
                p314.update_time_us(i, n);
                out.fail(std::string(to_string(i)) + " accepted on the smaller device");
                break;
            } catch (const UnsupportedInterfaceError&) {
            }
            ++checks;
        }
    }
    {
        emu::EmulatorConfig cfg;
        cfg.profile = Device::s7_314;
        cfg.opcua_server = emu::OpcUaServerConfig{"127.0.0.1", 0};
        emu::Emulator emulator(cfg);
        try {
            emulator.start();
            out.fail("emulator started an OPC UA server on the smaller device");
            emulator.stop();
        } catch (const UnsupportedInterfaceError&) {
        }
        ++checks;
    }

    std::ostringstream s;
    s << checks
      << " property checks: 100-value polls split in two on the smaller device, "
         "datasets cap at 10 fields and groups at 2 writers, OPC UA endpoints "
         "are rejected on the smaller device";
    out.summary = s.str();
    return out;
}

struct Criterion {
    int id;
    const char* label;
    double budget_s; // 0 = no budget
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "message sizes", 1.0, check_message_sizes},
    {2, "protocol efficiencies", 1.0, check_efficiencies},
    {3, "break-even counts", 1.0, check_breakeven},
    {4, "digit requirements", 10.0, check_digits},
    {5, "codec round-trips", 30.0, check_roundtrips},
    {6, "update-time floors", 300.0, check_update_floors},
    {7, "device limits", 0.0, check_limits},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        }
    }

    bool all_pass = true;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.summary = "aborted";
            out.fail(e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && elapsed > c.budget_s) {
            out.fail("took " + std::to_string(elapsed) + " s, budget " +
                     std::to_string(c.budget_s) + " s");
        }
        std::printf("%s [%d] %s: %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL", c.id,
                    c.label, out.summary.c_str(), elapsed,
                    out.pass ? "" : " -- ", out.pass ? "" : out.detail.str().c_str());
        std::fflush(stdout);
        all_pass = all_pass && out.pass;
    }
    return all_pass ? 0 : 1;
}
