#include "plcbench/report/report.hpp"

#include <cstdio>
#include <sstream>

#include "plcbench/errors.hpp"
#include "plcbench/version.hpp"

namespace plcbench {
namespace report {

Format format_from_string(std::string_view name) {
    if (name == "csv") {
        return Format::csv;
    }
    if (name == "md" || name == "markdown") {
        return Format::markdown;
    }
    throw UnknownNameError("unknown format: " + std::string(name));
}

std::string_view to_string(Format f) {
    return f == Format::csv ? "csv" : "markdown";
}

std::string_view file_extension(Format f) {
    return f == Format::csv ? "csv" : "md";
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : text) {
        hash ^= static_cast<std::uint8_t>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string config_stamp(std::string_view config_descriptor) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config_descriptor)));
    return buf;
}

namespace {

void header(std::ostringstream& out, Format f, std::string_view config_descriptor) {
    if (f == Format::csv) {
        out << "# plcbench " << kVersion << " config=" << config_stamp(config_descriptor)
            << "\n";
    } else {
        out << "<!-- plcbench " << kVersion
            << " config=" << config_stamp(config_descriptor) << " -->\n";
    }
}

std::string format_ms(double us) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", us / 1000.0);
    return buf;
}

std::string update_ms(const PlcProfile& profile, Interface i, int n,
                      const std::vector<UpdateOverride>& overrides) {
    if (const UpdateOverride* ov = find_override(overrides, i, profile.model(), n)) {
        return format_ms(ov->update_us);
    }
    return format_ms(static_cast<double>(profile.update_time_us(i, n)));
}

std::string_view metadata_marker(MetadataLevel level) {
    switch (level) {
    case MetadataLevel::none: return "-";
    case MetadataLevel::partial: return "o";
    case MetadataLevel::full: return "+";
    }
    return "?";
}

constexpr int kDecades[3] = {1, 10, 100};

} // namespace

std::string message_size_table(Format f, std::string_view config_descriptor) {
    std::ostringstream out;
    header(out, f, config_descriptor);
    if (f == Format::csv) {
        out << "message,n,wire_bytes\n";
        for (frame::MessageName m : frame::kAllMessages) {
            for (int n : kDecades) {
                out << frame::to_string(m) << "," << n << "," << frame::message_size(m, n)
                    << "\n";
            }
        }
        return out.str();
    }
    out << "\n| Message | n=1 | n=10 | n=100 |\n";
    out << "| --- | ---: | ---: | ---: |\n";
    for (frame::MessageName m : frame::kAllMessages) {
        out << "| " << frame::to_string(m);
        for (int n : kDecades) {
            out << " | " << frame::message_size(m, n);
        }
        out << " |\n";
    }
    out << "\nWire bytes per message carrying n 4-byte values, Ethernet overhead,\n"
           "padding and forced acknowledges included.\n";
    return out.str();
}

const UpdateOverride* find_override(const std::vector<UpdateOverride>& overrides,
                                    Interface i, Device d, int n) {
    for (auto it = overrides.rbegin(); it != overrides.rend(); ++it) {
        if (it->iface == i && it->device == d && bucket_index(it->n) == bucket_index(n)) {
            return &*it;
        }
    }
    return nullptr;
}

std::string interface_comparison_table(Format f, std::string_view config_descriptor,
                                       const TableOptions& opts) {
    std::vector<Interface> ifaces = opts.interfaces;
    if (ifaces.empty()) {
        ifaces.assign(kAllInterfaces.begin(), kAllInterfaces.end());
    }
    std::vector<int> ns = opts.n_values;
    if (ns.empty()) {
        ns = {1, 10, 100};
    }
    std::vector<Device> devices = opts.devices;
    if (devices.empty()) {
        devices.assign(kAllDevices.begin(), kAllDevices.end());
    }
    const frame::EfficiencyReport report =
        frame::build_efficiency_report(devices, ifaces, ns);
    std::ostringstream out;
    header(out, f, config_descriptor);
    if (f == Format::csv) {
        out << "interface,device,n,plug_and_play,metadata,efficiency_pct,total_bytes,"
               "payload_bytes,update_ms,estimated,split\n";
        for (const frame::EfficiencyRow& row : report.rows) {
            const InterfaceTraits& traits = interface_traits(row.iface);
            out << to_string(row.iface) << "," << to_string(row.device) << "," << row.n
                << "," << (traits.plug_and_play ? "+" : "-") << ","
                << metadata_marker(traits.metadata) << ",";
            if (!row.supported) {
                out << "n/a,n/a,n/a,n/a,,\n";
                continue;
            }
            const bool overridden =
                find_override(opts.overrides, row.iface, row.device, row.n) != nullptr;
            out << frame::format_pct_tenths(row.efficiency_tenths) << "," << row.total_bytes
                << "," << row.payload_bytes << ","
                << update_ms(PlcProfile::stock(row.device), row.iface, row.n,
                             opts.overrides)
                << "," << (row.estimated && !overridden ? "estimated" : "") << ","
                << (row.split_exchange ? "split" : "") << "\n";
        }
        return out.str();
    }
    out << "\n| Interface | P&P | Meta | n | Efficiency % |";
    for (Device d : devices) {
        out << " " << to_string(d) << " ms |";
    }
    out << "\n| --- | :-: | :-: | ---: | ---: |";
    for (size_t d = 0; d < devices.size(); ++d) {
        out << " ---: |";
    }
    out << "\n";
    // Rows come interface-major, then device, then n.
    const size_t per_device = ns.size();
    const size_t per_iface = devices.size() * per_device;
    for (size_t i = 0; i < ifaces.size(); ++i) {
        const InterfaceTraits& traits = interface_traits(ifaces[i]);
        for (size_t k = 0; k < per_device; ++k) {
            out << "| " << traits.label << " | " << (traits.plug_and_play ? "+" : "-")
                << " | " << metadata_marker(traits.metadata) << " | " << ns[k] << " | ";
            std::string efficiency;
            std::vector<std::string> per_device_ms(devices.size());
            for (size_t d = 0; d < devices.size(); ++d) {
                const frame::EfficiencyRow& row =
                    report.rows[i * per_iface + d * per_device + k];
                if (!row.supported) {
                    per_device_ms[d] = "n/a";
                    continue;
                }
                std::string cell = frame::format_pct_tenths(row.efficiency_tenths);
                if (row.split_exchange) {
                    cell += " (split)";
                }
                if (efficiency.empty()) {
                    efficiency = cell;
                } else if (efficiency != cell) {
                    efficiency += " / " + cell;
                }
                std::string ms = update_ms(PlcProfile::stock(row.device), row.iface,
                                           row.n, opts.overrides);
                if (row.estimated &&
                    !find_override(opts.overrides, row.iface, row.device, row.n)) {
                    ms += " (est)";
                }
                per_device_ms[d] = ms;
            }
            out << (efficiency.empty() ? "n/a" : efficiency);
            for (const std::string& ms : per_device_ms) {
                out << " | " << ms;
            }
            out << " |\n";
        }
    }
    out << "\nEfficiency is payload over every byte of the exchange; split polls keep\n"
           "the single-exchange ratio divided by the number of exchanges. Update\n"
           "times are the stock device floors unless measurements replaced them;\n"
           "(est) marks extrapolation past the device's dataset limits.\n";
    return out.str();
}

std::string breakeven_table(const std::vector<offload::BreakEvenCell>& cells, Format f,
                            std::string_view config_descriptor) {
    std::ostringstream out;
    header(out, f, config_descriptor);
    if (f == Format::csv) {
        out << "interface,device,n,n_break_even,estimated\n";
        for (const offload::BreakEvenCell& cell : cells) {
            out << to_string(cell.iface) << "," << to_string(cell.device) << "," << cell.n
                << ",";
            if (!cell.supported) {
                out << "n/a,\n";
                continue;
            }
            out << cell.n_break_even << "," << (cell.estimated ? "estimated" : "") << "\n";
        }
        return out.str();
    }
    if (cells.empty()) {
        out << "\n(no cells selected)\n";
        return out.str();
    }
    // Cells arrive interface-major, then device, then n; one table row per
    // (interface, device) run.
    size_t group = 1;
    while (group < cells.size() && cells[group].iface == cells[0].iface &&
           cells[group].device == cells[0].device) {
        ++group;
    }
    out << "\n| Interface | Device |";
    for (size_t k = 0; k < group; ++k) {
        out << " n=" << cells[k].n << " |";
    }
    out << "\n| --- | --- |";
    for (size_t k = 0; k < group; ++k) {
        out << " ---: |";
    }
    out << "\n";
    for (size_t i = 0; i < cells.size(); i += group) {
        const offload::BreakEvenCell& first = cells[i];
        out << "| " << interface_traits(first.iface).label << " | "
            << to_string(first.device);
        for (size_t k = 0; k < group && i + k < cells.size(); ++k) {
            const offload::BreakEvenCell& cell = cells[i + k];
            out << " | ";
            if (!cell.supported) {
                out << "n/a";
            } else {
                out << cell.n_break_even << (cell.estimated ? " (est)" : "");
            }
        }
        out << " |\n";
    }
    out << "\nSmallest term count from which moving the computation to the edge node\n"
           "is at least as fast as running it on the controller.\n";
    return out.str();
}

} // namespace report
} // namespace plcbench
