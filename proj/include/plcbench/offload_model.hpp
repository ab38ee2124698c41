#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plcbench/profiles.hpp"

namespace plcbench {
namespace offload {

// Alternating-series approximation of pi: 4 * sum_{k=0}^{n} (-1)^k / (2k+1),
// summed in forward order in double precision.
double leibniz_pi(std::int64_t n);

// Upper bound on |leibniz_pi(n) - pi|: the magnitude of the first omitted
// term, 4 / (2n + 3).
double leibniz_error_bound(std::int64_t n);

struct DigitsRequirement {
    int digits = 0;            // requested leading decimal digits of pi
    std::int64_t table_n = 0;  // anchor iteration count for this digit count
    std::string prefix;        // digits the anchor approximation prints
    std::int64_t minimal_n = 0; // first n whose approximation matches the true
                                // prefix of this length (linear scan)
};

// Anchor rows exist for 1..6 digits; anything else throws OutOfTableError.
// The 5 digit anchor repeats the 4 digit prefix: its approximation still
// prints 3.141, so the true minimal n is reported alongside.
DigitsRequirement digits_required(int digits);

// True when x and pi share their first `digits` significant decimal digits
// (truncated, not rounded).
bool matches_pi_prefix(double x, int digits);

// Cycle cost model of one processing node: microseconds per partial sum.
struct CycleModel {
    double cost_per_term_us = 0.0;
    // Largest n that still fits the node's cycle budget; informative only.
    double terms_per_cycle_budget = 0.0;
};

CycleModel stock_cycle_model(Device d);
CycleModel stock_edge_cycle_model(); // the mini PC next to the line

// One-way transport delay of the link between controller and edge node.
struct NetworkModel {
    double line_length_m = 1000.0;
    double per_meter_ns = 5.0;
    double hops = 10.0;
    double per_hop_us = 7.5;

    double total_us() const {
        return line_length_m * per_meter_ns / 1000.0 + hops * per_hop_us;
    }
};

// Fixed per-exchange costs beyond raw transport.
struct OverheadModel {
    double nic_us = 1.5;     // paid once per NIC, twice per exchange
    double compute_us = 1.0; // serialization and dispatch

    double total_us() const { return 2.0 * nic_us + compute_us; }
};

struct OffloadScenario {
    CycleModel plc;
    CycleModel edge;
    NetworkModel network;
    OverheadModel overhead;
    double update_time_us = 0.0;
    // Exchanges per update; 2 when the poll must be split on the device.
    int exchange_count = 1;

    double fixed_cost_us() const {
        return exchange_count * (network.total_us() + overhead.total_us()) +
               update_time_us;
    }
};

OffloadScenario stock_scenario(Device d, Interface i, int n);

// Round-trip cost of offloading an n-term computation under the scenario.
double t_ro_us(const OffloadScenario& s, double n);

// How the per-term cost difference enters the break-even division.
enum class BreakEvenRounding {
    // Truncate the difference to 10 ns before dividing; this is the
    // convention the published tables follow.
    reference,
    // Divide exactly; guarantees the crossing property at the returned n.
    exact,
};

// Smallest integer n for which offloading is at least as fast as computing
// on the controller. Throws NoBenefitError when the edge node is not
// cheaper per term. Returns 0 when even n = 0 already favors offloading.
std::int64_t break_even(const OffloadScenario& s,
                        BreakEvenRounding rounding = BreakEvenRounding::reference);

struct BreakEvenCell {
    Interface iface = Interface::ouc_udp;
    Device device = Device::s7_314;
    int n = 1;
    bool supported = false;
    std::int64_t n_break_even = 0;
    bool estimated = false;
};

// One cell per (interface, device, n in {1, 10, 100}); unsupported
// combinations carry supported = false.
std::vector<BreakEvenCell> build_breakeven_table(
    const std::vector<Device>& devices = {Device::s7_314, Device::s7_1512},
    BreakEvenRounding rounding = BreakEvenRounding::reference);

// Scenario (de)serialization for the CLI: flat JSON object with the model
// constants; missing keys keep stock values.
std::string scenario_to_json(const OffloadScenario& s);
OffloadScenario scenario_from_json(const std::string& text);

} // namespace offload
} // namespace plcbench
