#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plcbench/frame_model.hpp"
#include "plcbench/offload_model.hpp"

namespace plcbench {
namespace report {

enum class Format { csv, markdown };

Format format_from_string(std::string_view name); // throws UnknownNameError
std::string_view to_string(Format f);
std::string_view file_extension(Format f); // "csv" / "md"

// Stable 64 bit digest of the effective configuration, embedded in every
// emitted document so re-runs are attributable.
std::uint64_t fnv1a64(std::string_view text);
std::string config_stamp(std::string_view config_descriptor);

// Wire bytes of every message shape at the three decades.
std::string message_size_table(Format f, std::string_view config_descriptor);

// A measured update time that replaces the stock floor for every cell whose
// value count falls into the same decade as the measurement's.
struct UpdateOverride {
    Interface iface = Interface::ouc_udp;
    Device device = Device::s7_1512;
    int n = 1;
    double update_us = 0.0;
};

struct TableOptions {
    std::vector<Device> devices;           // empty selects both controllers
    std::vector<Interface> interfaces;     // empty selects all six
    std::vector<int> n_values;             // empty selects {1, 10, 100}
    std::vector<UpdateOverride> overrides; // later entries win
};

// First override matching (interface, device, decade of n), scanning from the
// back; null when none applies.
const UpdateOverride* find_override(const std::vector<UpdateOverride>& overrides,
                                    Interface i, Device d, int n);

// Efficiency and update times per (interface, device, n), with plug-and-play
// and metadata markers; mirrors build_efficiency_report.
std::string interface_comparison_table(Format f, std::string_view config_descriptor,
                                       const TableOptions& opts = {});

// Break-even term counts per (interface, device, n).
std::string breakeven_table(const std::vector<offload::BreakEvenCell>& cells, Format f,
                            std::string_view config_descriptor);

} // namespace report
} // namespace plcbench
