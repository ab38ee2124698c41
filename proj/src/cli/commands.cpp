#include "plcbench/cli/commands.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "plcbench/emulator/emulator.hpp"
#include "plcbench/errors.hpp"
#include "plcbench/harness/measurement.hpp"
#include "plcbench/offload_model.hpp"
#include "plcbench/report/report.hpp"
#include "plcbench/version.hpp"
#include "plcbench/wire/selftest.hpp"

namespace plcbench {
namespace cli {

namespace {

namespace fs = std::filesystem;

std::atomic<bool> g_interrupted{false};

void on_interrupt(int) {
    g_interrupted.store(true);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidConfigError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
    std::cout << "wrote " << path.string() << "\n";
}

// Everything the flag surface can carry; each mode validates its slice.
struct Options {
    std::string mode;
    std::string config_path;
    std::string profile = "s7-1512";
    bool profile_given = false;
    std::vector<std::string> interfaces;
    std::vector<int> n_values;
    std::string out_dir = ".";
    std::string format = "all";
    std::string rounding = "reference";
    std::vector<std::string> t_update_from;
    std::string scenario_path;

    std::string host = "127.0.0.1";
    int port = -1;
    int samples = 155;
    int warmup = 50;
    std::string group = "239.0.0.1";
    std::string iface_addr = "127.0.0.1";
    int db = 1;
    std::int64_t start_offset = 0;
    std::string byte_order = "big";
    int timeout_ms = 10000;

    double duration_s = 0.0;
    int port_s7 = 102;
    int port_opcua = 4840;
    int port_ouc_udp = 7601;
    int port_ouc_tcp = 7602;
    int port_opcua_write = 7603;
    std::string uadp_group = "239.0.0.1";
    int uadp_port = 4841;
    std::string push_host = "127.0.0.1";
    std::uint64_t seed = 42;
    int db_size = 4096;
    bool print_config = false;

    int trials = 1000;
};

std::uint16_t to_port(int value) {
    return static_cast<std::uint16_t>(value);
}

wire::ByteOrder parse_order(const std::string& name) {
    return name == "little" ? wire::ByteOrder::little_endian : wire::ByteOrder::big_endian;
}

std::vector<Interface> parse_interfaces(const std::vector<std::string>& names) {
    std::vector<Interface> out;
    out.reserve(names.size());
    for (const std::string& name : names) {
        out.push_back(interface_from_string(name));
    }
    return out;
}

std::vector<int> checked_n(const std::vector<int>& ns) {
    for (int n : ns) {
        if (n < 1 || n > 100) {
            throw InvalidConfigError("value counts follow the studied range 1..100, got " +
                                     std::to_string(n));
        }
    }
    return ns;
}

// Default peer ports, shared between the emulator and measure modes so the
// two commands meet without extra flags.
std::uint16_t default_port(Interface i) {
    switch (i) {
    case Interface::s7: return 102;
    case Interface::opcua_read: return 4840;
    case Interface::ouc_udp: return 7601;
    case Interface::ouc_tcp: return 7602;
    case Interface::opcua_write: return 7603;
    case Interface::uadp: return 4841;
    }
    return 0;
}

report::UpdateOverride parse_stats_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidConfigError(path + " does not parse as JSON: " + e.what());
    }
    report::UpdateOverride ov;
    try {
        ov.iface = interface_from_string(j.at("interface").get<std::string>());
        ov.device = device_from_string(j.at("device").get<std::string>());
        ov.n = j.at("n").get<int>();
        ov.update_us = j.at("min_us").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfigError(path + " is not a stats document: " + e.what());
    }
    if (ov.n < 1 || ov.update_us <= 0.0) {
        throw InvalidConfigError(path + " carries implausible run coordinates");
    }
    return ov;
}

std::set<std::string> selected_formats(const std::string& format) {
    if (format == "all") {
        return {"csv", "md", "json"};
    }
    if (format == "markdown") {
        return {"md"};
    }
    return {format};
}

void append_overrides(std::ostringstream& out,
                      const std::vector<report::UpdateOverride>& overrides) {
    out << " overrides=";
    for (const report::UpdateOverride& ov : overrides) {
        out << to_string(ov.iface) << ":" << to_string(ov.device) << ":" << ov.n << ":"
            << ov.update_us << ";";
    }
}

std::string joined_names(const std::vector<Interface>& ifaces) {
    std::ostringstream out;
    for (size_t i = 0; i < ifaces.size(); ++i) {
        out << (i ? "," : "") << to_string(ifaces[i]);
    }
    return out.str();
}

std::string joined_ints(const std::vector<int>& ns) {
    std::ostringstream out;
    for (size_t i = 0; i < ns.size(); ++i) {
        out << (i ? "," : "") << ns[i];
    }
    return out.str();
}

nlohmann::ordered_json json_header(std::string_view stamp) {
    nlohmann::ordered_json doc;
    doc["tool"] = "plcbench";
    doc["version"] = kVersion;
    doc["config"] = std::string(stamp);
    return doc;
}

std::string message_sizes_json(std::string_view stamp) {
    nlohmann::ordered_json doc = json_header(stamp);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (frame::MessageName m : frame::kAllMessages) {
        for (int n : {1, 10, 100}) {
            nlohmann::ordered_json row;
            row["message"] = std::string(frame::to_string(m));
            row["n"] = n;
            row["wire_bytes"] = frame::message_size(m, n);
            rows.push_back(row);
        }
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

std::string comparison_json(const report::TableOptions& opts, std::string_view stamp) {
    std::vector<Device> devices = opts.devices;
    if (devices.empty()) {
        devices.assign(kAllDevices.begin(), kAllDevices.end());
    }
    const frame::EfficiencyReport rep =
        frame::build_efficiency_report(devices, opts.interfaces, opts.n_values);
    nlohmann::ordered_json doc = json_header(stamp);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const frame::EfficiencyRow& row : rep.rows) {
        const InterfaceTraits& traits = interface_traits(row.iface);
        nlohmann::ordered_json r;
        r["interface"] = std::string(to_string(row.iface));
        r["device"] = std::string(to_string(row.device));
        r["n"] = row.n;
        r["plug_and_play"] = traits.plug_and_play;
        r["supported"] = row.supported;
        if (row.supported) {
            const report::UpdateOverride* ov =
                report::find_override(opts.overrides, row.iface, row.device, row.n);
            const double update_us =
                ov ? ov->update_us
                   : static_cast<double>(
                         PlcProfile::stock(row.device).update_time_us(row.iface, row.n));
            r["efficiency_pct"] = frame::format_pct_tenths(row.efficiency_tenths);
            r["total_bytes"] = row.total_bytes;
            r["payload_bytes"] = row.payload_bytes;
            r["update_ms"] = update_us / 1000.0;
            r["estimated"] = row.estimated && ov == nullptr;
            r["split"] = row.split_exchange;
        }
        rows.push_back(r);
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

std::string breakeven_json(const std::vector<offload::BreakEvenCell>& cells,
                           std::string_view stamp) {
    nlohmann::ordered_json doc = json_header(stamp);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const offload::BreakEvenCell& cell : cells) {
        nlohmann::ordered_json r;
        r["interface"] = std::string(to_string(cell.iface));
        r["device"] = std::string(to_string(cell.device));
        r["n"] = cell.n;
        r["supported"] = cell.supported;
        if (cell.supported) {
            r["n_break_even"] = cell.n_break_even;
            r["estimated"] = cell.estimated;
        }
        rows.push_back(r);
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

int cmd_tables(const Options& o) {
    report::TableOptions opts;
    if (o.profile_given) {
        opts.devices = {device_from_string(o.profile)};
    }
    opts.interfaces = parse_interfaces(o.interfaces);
    opts.n_values = checked_n(o.n_values);
    for (const std::string& path : o.t_update_from) {
        opts.overrides.push_back(parse_stats_file(path));
    }

    std::ostringstream desc;
    desc << "mode=tables profile=" << (o.profile_given ? o.profile : "all")
         << " interfaces=" << joined_names(opts.interfaces)
         << " n=" << joined_ints(opts.n_values);
    append_overrides(desc, opts.overrides);
    const std::string descriptor = desc.str();
    const std::string stamp = report::config_stamp(descriptor);

    fs::create_directories(o.out_dir);
    const fs::path out(o.out_dir);
    const std::set<std::string> formats = selected_formats(o.format);
    if (formats.count("csv")) {
        write_file(out / "message_sizes.csv",
                   report::message_size_table(report::Format::csv, descriptor));
        write_file(out / "interface_comparison.csv",
                   report::interface_comparison_table(report::Format::csv, descriptor,
                                                      opts));
    }
    if (formats.count("md")) {
        write_file(out / "message_sizes.md",
                   report::message_size_table(report::Format::markdown, descriptor));
        write_file(out / "interface_comparison.md",
                   report::interface_comparison_table(report::Format::markdown,
                                                      descriptor, opts));
    }
    if (formats.count("json")) {
        write_file(out / "message_sizes.json", message_sizes_json(stamp));
        write_file(out / "interface_comparison.json", comparison_json(opts, stamp));
    }
    return 0;
}

int cmd_breakeven(const Options& o) {
    const offload::BreakEvenRounding rounding = o.rounding == "exact"
                                                    ? offload::BreakEvenRounding::exact
                                                    : offload::BreakEvenRounding::reference;
    std::vector<Device> devices(kAllDevices.begin(), kAllDevices.end());
    if (o.profile_given) {
        devices = {device_from_string(o.profile)};
    }
    std::vector<Interface> ifaces = parse_interfaces(o.interfaces);
    if (ifaces.empty()) {
        ifaces.assign(kAllInterfaces.begin(), kAllInterfaces.end());
    }
    std::vector<int> ns = checked_n(o.n_values);
    if (ns.empty()) {
        ns = {1, 10, 100};
    }
    std::vector<report::UpdateOverride> overrides;
    for (const std::string& path : o.t_update_from) {
        overrides.push_back(parse_stats_file(path));
    }

    // A scenario file pins model constants globally; whatever it leaves out
    // keeps varying per cell.
    std::optional<offload::OffloadScenario> base;
    bool pin_plc = false;
    bool pin_update = false;
    bool pin_exchange = false;
    std::string scenario_text;
    if (!o.scenario_path.empty()) {
        scenario_text = read_file(o.scenario_path);
        base = offload::scenario_from_json(scenario_text);
        const nlohmann::json j = nlohmann::json::parse(scenario_text, nullptr, false);
        pin_plc = j.contains("plc_cost_per_term_us");
        pin_update = j.contains("update_time_us");
        pin_exchange = j.contains("exchange_count");
    }

    std::vector<offload::BreakEvenCell> cells;
    for (Interface i : ifaces) {
        for (Device d : devices) {
            const PlcProfile& profile = PlcProfile::stock(d);
            for (int n : ns) {
                offload::BreakEvenCell cell;
                cell.iface = i;
                cell.device = d;
                cell.n = n;
                if (!profile.supports(i)) {
                    cells.push_back(cell);
                    continue;
                }
                offload::OffloadScenario s =
                    base ? *base : offload::stock_scenario(d, i, n);
                if (base && !pin_plc) {
                    s.plc = offload::stock_cycle_model(d);
                }
                if (base && !pin_exchange) {
                    s.exchange_count =
                        i == Interface::s7 ? profile.split_count(n) : 1;
                }
                const report::UpdateOverride* ov =
                    report::find_override(overrides, i, d, n);
                if (!pin_update) {
                    s.update_time_us =
                        ov ? ov->update_us
                           : static_cast<double>(profile.update_time_us(i, n));
                }
                try {
                    cell.n_break_even = offload::break_even(s, rounding);
                    cell.supported = true;
                } catch (const NoBenefitError&) {
                    cell.supported = false;
                }
                cell.estimated =
                    profile.update_time_estimated(i, n) && ov == nullptr && !pin_update;
                cells.push_back(cell);
            }
        }
    }

    std::ostringstream desc;
    desc << "mode=breakeven rounding=" << o.rounding
         << " profile=" << (o.profile_given ? o.profile : "all")
         << " interfaces=" << joined_names(ifaces) << " n=" << joined_ints(ns);
    append_overrides(desc, overrides);
    if (!scenario_text.empty()) {
        desc << " scenario=" << report::config_stamp(scenario_text);
    }
    const std::string descriptor = desc.str();

    fs::create_directories(o.out_dir);
    const fs::path out(o.out_dir);
    const std::set<std::string> formats = selected_formats(o.format);
    if (formats.count("csv")) {
        write_file(out / "break_even.csv",
                   report::breakeven_table(cells, report::Format::csv, descriptor));
    }
    if (formats.count("md")) {
        write_file(out / "break_even.md",
                   report::breakeven_table(cells, report::Format::markdown, descriptor));
    }
    if (formats.count("json")) {
        write_file(out / "break_even.json",
                   breakeven_json(cells, report::config_stamp(descriptor)));
    }
    return 0;
}

int cmd_measure(const Options& o) {
    if (o.interfaces.size() != 1) {
        throw InvalidConfigError("measure mode needs exactly one --interface");
    }
    harness::MeasurementConfig cfg;
    cfg.iface = interface_from_string(o.interfaces.front());
    cfg.device = device_from_string(o.profile);
    if (o.n_values.size() > 1) {
        throw InvalidConfigError("measure mode takes a single --n");
    }
    cfg.n = o.n_values.empty() ? 10 : checked_n(o.n_values).front();
    if (o.samples < o.warmup + 2) {
        throw InvalidConfigError("need at least warmup + 2 samples, got " +
                                 std::to_string(o.samples));
    }
    cfg.samples = o.samples;
    cfg.warmup = o.warmup;
    cfg.host = o.host;
    cfg.port = o.port >= 0 ? to_port(o.port) : default_port(cfg.iface);
    cfg.group = o.group;
    cfg.interface_addr = o.iface_addr;
    cfg.db = static_cast<std::uint16_t>(o.db);
    cfg.start = static_cast<std::uint32_t>(o.start_offset);
    cfg.order = parse_order(o.byte_order);
    cfg.timeout = net::Millis(o.timeout_ms);

    const harness::MeasurementRun run = harness::run_measurement(cfg);
    const harness::UpdateTimeStats stats = harness::summarize(run);

    fs::create_directories(o.out_dir);
    const fs::path out(o.out_dir);
    std::ostringstream base;
    base << to_string(cfg.device) << "_" << to_string(cfg.iface) << "_n" << cfg.n;
    write_file(out / ("run_" + base.str() + ".csv"), harness::run_to_csv(run));
    write_file(out / ("stats_" + base.str() + ".json"), harness::stats_to_json(run, stats));

    char line[160];
    std::snprintf(line, sizeof line,
                  "min %.3f ms  mean %.3f ms  p50 %.3f ms  p99 %.3f ms  (%lld gaps)",
                  static_cast<double>(stats.min_us) / 1000.0, stats.mean_us / 1000.0,
                  stats.p50_us / 1000.0, stats.p99_us / 1000.0,
                  static_cast<long long>(stats.count));
    std::cout << line << "\n";
    return 0;
}

int cmd_emulate(const Options& o) {
    emu::EmulatorConfig cfg;
    if (!o.config_path.empty()) {
        cfg = emu::EmulatorConfig::from_json(read_file(o.config_path));
    } else {
        cfg.profile = device_from_string(o.profile);
        cfg.seed = o.seed;
        cfg.data_blocks = {{static_cast<std::uint16_t>(o.db),
                            static_cast<std::uint32_t>(o.db_size)}};
        std::vector<Interface> ifaces = parse_interfaces(o.interfaces);
        if (ifaces.empty()) {
            ifaces = {Interface::s7, Interface::opcua_read};
        }
        const int push_n = o.n_values.empty() ? 10 : checked_n(o.n_values).front();
        const std::uint16_t db = static_cast<std::uint16_t>(o.db);
        const std::uint32_t start = static_cast<std::uint32_t>(o.start_offset);
        for (Interface i : ifaces) {
            switch (i) {
            case Interface::s7:
                cfg.s7_server = emu::S7ServerConfig{o.host, to_port(o.port_s7)};
                break;
            case Interface::opcua_read:
                cfg.opcua_server =
                    emu::OpcUaServerConfig{o.host, to_port(o.port_opcua), db, start};
                break;
            case Interface::ouc_udp:
                cfg.ouc_udp_push =
                    emu::OucPushConfig{o.push_host, to_port(o.port_ouc_udp), push_n,
                                       db, start, parse_order(o.byte_order)};
                break;
            case Interface::ouc_tcp:
                cfg.ouc_tcp_push =
                    emu::OucPushConfig{o.push_host, to_port(o.port_ouc_tcp), push_n,
                                       db, start, parse_order(o.byte_order)};
                break;
            case Interface::opcua_write:
                cfg.opcua_write_push = emu::OpcUaWritePushConfig{
                    o.push_host, to_port(o.port_opcua_write), push_n, db, start};
                break;
            case Interface::uadp: {
                emu::UadpPublishConfig pub;
                pub.group = o.uadp_group;
                pub.port = to_port(o.uadp_port);
                pub.interface_addr = o.iface_addr;
                pub.db = db;
                pub.start = start;
                pub.pubsub = emu::default_pubsub(push_n);
                cfg.uadp_publish = pub;
                break;
            }
            }
        }
    }

    if (o.print_config) {
        std::cout << cfg.to_json() << "\n";
        return 0;
    }

    emu::Emulator emulator(cfg);
    emulator.start();
    std::cout << "profile " << to_string(emulator.profile().model()) << "\n";
    if (cfg.s7_server) {
        std::cout << "s7 server " << cfg.s7_server->host << ":" << emulator.s7_port()
                  << "\n";
    }
    if (cfg.opcua_server) {
        std::cout << "opcua server " << cfg.opcua_server->host << ":"
                  << emulator.opcua_port() << "\n";
    }
    if (cfg.ouc_udp_push) {
        std::cout << "ouc-udp push -> " << cfg.ouc_udp_push->host << ":"
                  << cfg.ouc_udp_push->port << " n=" << cfg.ouc_udp_push->n << "\n";
    }
    if (cfg.ouc_tcp_push) {
        std::cout << "ouc-tcp push -> " << cfg.ouc_tcp_push->host << ":"
                  << cfg.ouc_tcp_push->port << " n=" << cfg.ouc_tcp_push->n << "\n";
    }
    if (cfg.opcua_write_push) {
        std::cout << "opcua-write push -> " << cfg.opcua_write_push->host << ":"
                  << cfg.opcua_write_push->port << " n=" << cfg.opcua_write_push->n
                  << "\n";
    }
    if (cfg.uadp_publish) {
        std::cout << "uadp publish -> " << cfg.uadp_publish->group << ":"
                  << cfg.uadp_publish->port << " fields="
                  << cfg.uadp_publish->pubsub.total_fields() << "\n";
    }

    std::signal(SIGINT, on_interrupt);
    std::signal(SIGTERM, on_interrupt);
    if (o.duration_s > 0) {
        std::cout << "running for " << o.duration_s << " s\n";
    } else {
        std::cout << "running until interrupted\n";
    }
    const auto begin = std::chrono::steady_clock::now();
    while (!g_interrupted.load()) {
        if (o.duration_s > 0) {
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - begin;
            if (elapsed.count() >= o.duration_s) {
                break;
            }
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    emulator.stop();
    std::cout << "stopped\n";
    return 0;
}

int cmd_selftest(const Options& o) {
    const std::vector<wire::SelftestResult> results =
        wire::roundtrip_selftest(o.trials, o.seed);
    for (const wire::SelftestResult& r : results) {
        std::cout << r.check << ": " << (r.ok ? "ok" : "FAIL") << " (" << r.cases
                  << " cases)";
        if (!r.ok) {
            std::cout << " " << r.detail;
        }
        std::cout << "\n";
    }
    if (!wire::all_ok(results)) {
        std::cerr << "selftest failed\n";
        return 2;
    }
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    Options o;
    CLI::App app{"field-level controller communication toolkit"};
    app.set_version_flag("--version", std::string("plcbench ") + std::string(kVersion));

    app.add_option("--mode", o.mode,
                   "emulate | measure | tables | breakeven | roundtrip-selftest")
        ->required()
        ->check(CLI::IsMember(
            {"emulate", "measure", "tables", "breakeven", "roundtrip-selftest"}));
    app.add_option("--config", o.config_path, "emulator config JSON")
        ->envname("PLCBENCH_CONFIG");
    CLI::Option* profile_opt =
        app.add_option("--profile,--device", o.profile, "controller profile")
            ->check(CLI::IsMember({"s7-314", "s7-1512", "314", "1512"}));
    app.add_option("--interface,--interfaces", o.interfaces,
                   "interface selection (repeatable)")
        ->delimiter(',');
    app.add_option("--n", o.n_values, "values per message (repeatable)")->delimiter(',');
    app.add_option("--out", o.out_dir, "output directory")->capture_default_str();
    app.add_option("--format", o.format, "csv | md | json | all")->capture_default_str()
        ->check(CLI::IsMember({"csv", "md", "markdown", "json", "all"}));
    app.add_option("--rounding", o.rounding, "break-even rounding convention")->capture_default_str()
        ->check(CLI::IsMember({"reference", "exact"}));
    app.add_option("--t-update-from", o.t_update_from,
                   "stats JSON replacing the stock update time of its decade "
                   "(repeatable)");
    app.add_option("--scenario", o.scenario_path, "break-even scenario JSON");

    app.add_option("--host", o.host, "peer or bind address")->capture_default_str();
    app.add_option("--port", o.port, "peer or bind port (default per interface)")
        ->check(CLI::Range(0, 65535));
    app.add_option("--samples", o.samples, "updates to observe")->capture_default_str()
        ->check(CLI::Range(2, 1000000));
    app.add_option("--warmup", o.warmup, "leading gaps the summary discards")->capture_default_str()
        ->check(CLI::Range(0, 1000000));
    app.add_option("--group", o.group, "multicast group to join")->capture_default_str();
    app.add_option("--iface-addr", o.iface_addr, "multicast interface address")->capture_default_str();
    app.add_option("--db", o.db, "data block number")->capture_default_str()->check(CLI::Range(0, 65535));
    app.add_option("--start-offset", o.start_offset, "byte offset into the block")->capture_default_str()
        ->check(CLI::Range(std::int64_t{0}, std::int64_t{0xFFFFFFFF}));
    app.add_option("--byte-order", o.byte_order, "value byte order on OUC")->capture_default_str()
        ->check(CLI::IsMember({"big", "little"}));
    app.add_option("--timeout-ms", o.timeout_ms, "receive timeout")->capture_default_str()
        ->check(CLI::Range(1, 3600000));

    app.add_option("--duration-s", o.duration_s, "emulator run time, 0 = until Ctrl-C")->capture_default_str();
    app.add_option("--port-s7", o.port_s7, "S7 server port, 0 = ephemeral")->capture_default_str()
        ->check(CLI::Range(0, 65535));
    app.add_option("--port-opcua", o.port_opcua, "OPC UA server port, 0 = ephemeral")->capture_default_str()
        ->check(CLI::Range(0, 65535));
    app.add_option("--port-ouc-udp", o.port_ouc_udp, "OUC UDP push target port")->capture_default_str()
        ->check(CLI::Range(1, 65535));
    app.add_option("--port-ouc-tcp", o.port_ouc_tcp, "OUC TCP push target port")->capture_default_str()
        ->check(CLI::Range(1, 65535));
    app.add_option("--port-opcua-write", o.port_opcua_write,
                   "OPC UA write push target port")->capture_default_str()
        ->check(CLI::Range(1, 65535));
    app.add_option("--uadp-group", o.uadp_group, "UADP multicast group")->capture_default_str();
    app.add_option("--uadp-port", o.uadp_port, "UADP multicast port")->capture_default_str()
        ->check(CLI::Range(1, 65535));
    app.add_option("--push-host", o.push_host, "push target address")->capture_default_str();
    app.add_option("--seed", o.seed, "jitter / selftest seed")->capture_default_str();
    app.add_option("--db-size", o.db_size, "data block bytes")->capture_default_str()
        ->check(CLI::Range(4, 1 << 20));
    app.add_flag("--print-config", o.print_config,
                 "print the effective emulator config and exit");

    app.add_option("--trials", o.trials, "selftest round-trips per codec")->capture_default_str()
        ->check(CLI::Range(1, 10000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    o.profile_given = profile_opt->count() > 0;

    try {
        if (o.mode == "tables") {
            return cmd_tables(o);
        }
        if (o.mode == "breakeven") {
            return cmd_breakeven(o);
        }
        if (o.mode == "measure") {
            return cmd_measure(o);
        }
        if (o.mode == "emulate") {
            return cmd_emulate(o);
        }
        return cmd_selftest(o);
    } catch (const InvalidConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cli
} // namespace plcbench
