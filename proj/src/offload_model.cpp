#include "plcbench/offload_model.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "plcbench/errors.hpp"

namespace plcbench {
namespace offload {

double leibniz_pi(std::int64_t n) {
    if (n < 0) {
        throw InvalidConfigError("iteration count cannot be negative");
    }
    double sum = 0.0;
    double sign = 1.0;
    for (std::int64_t k = 0; k <= n; ++k) {
        sum += sign / static_cast<double>(2 * k + 1);
        sign = -sign;
    }
    return 4.0 * sum;
}

double leibniz_error_bound(std::int64_t n) {
    if (n < 0) {
        throw InvalidConfigError("iteration count cannot be negative");
    }
    return 4.0 / static_cast<double>(2 * n + 3);
}

namespace {

constexpr std::int64_t kPow10[7] = {1, 10, 100, 1000, 10000, 100000, 1000000};

std::int64_t truncated_digits(double x, int digits) {
    return static_cast<std::int64_t>(std::floor(x * static_cast<double>(kPow10[digits - 1])));
}

} // namespace

bool matches_pi_prefix(double x, int digits) {
    if (digits < 1 || digits > 6) {
        throw OutOfTableError("prefix match supports 1 to 6 digits");
    }
    return truncated_digits(x, digits) == truncated_digits(std::numbers::pi, digits);
}

namespace {

struct Anchor {
    std::int64_t n;
    const char* prefix;
};

// Iteration counts at which the approximation settles a digit count, together
// with the digits the approximation prints there. The 5 digit row still
// prints 3.141: at n = 100000 the approximation is 3.14160..., whose fifth
// digit disagrees with pi.
constexpr Anchor kAnchors[6] = {
    {2, "3"},       {32, "3.1"},     {1000, "3.14"},
    {10000, "3.141"}, {100000, "3.141"}, {1000000, "3.14159"},
};

constexpr std::int64_t kScanLimit = 2'000'000;

// First n per digit count whose approximation matches pi's true prefix,
// found in a single forward pass.
const std::array<std::int64_t, 6>& minimal_match_table() {
    static const std::array<std::int64_t, 6> table = [] {
        std::array<std::int64_t, 6> out{};
        out.fill(-1);
        int unresolved = 6;
        double sum = 0.0;
        double sign = 1.0;
        for (std::int64_t k = 0; k <= kScanLimit && unresolved > 0; ++k) {
            sum += sign / static_cast<double>(2 * k + 1);
            sign = -sign;
            const double approx = 4.0 * sum;
            for (int d = 1; d <= 6; ++d) {
                if (out[d - 1] < 0 && matches_pi_prefix(approx, d)) {
                    out[d - 1] = k;
                    --unresolved;
                }
            }
        }
        return out;
    }();
    return table;
}

} // namespace

DigitsRequirement digits_required(int digits) {
    if (digits < 1 || digits > 6) {
        throw OutOfTableError("digit counts 1 to 6 are tabulated");
    }
    DigitsRequirement r;
    r.digits = digits;
    r.table_n = kAnchors[digits - 1].n;
    r.prefix = kAnchors[digits - 1].prefix;
    r.minimal_n = minimal_match_table()[digits - 1];
    return r;
}

CycleModel stock_cycle_model(Device d) {
    // Per-term costs and the largest term count the controller sustains
    // before its watchdog trips.
    if (d == Device::s7_314) {
        return CycleModel{20.2, 2.96e5};
    }
    return CycleModel{36.5, 1.64e5};
}

CycleModel stock_edge_cycle_model() {
    // The mini PC is not cycle-bound within this model's range.
    return CycleModel{0.0349, 0.0};
}

OffloadScenario stock_scenario(Device d, Interface i, int n) {
    const PlcProfile& profile = PlcProfile::stock(d);
    OffloadScenario s;
    s.plc = stock_cycle_model(d);
    s.edge = stock_edge_cycle_model();
    s.update_time_us = static_cast<double>(profile.update_time_us(i, n));
    s.exchange_count = i == Interface::s7 ? profile.split_count(n) : 1;
    return s;
}

double t_ro_us(const OffloadScenario& s, double n) {
    if (n < 0) {
        throw InvalidConfigError("term count cannot be negative");
    }
    return s.fixed_cost_us() + n * s.edge.cost_per_term_us;
}

namespace {

// 0.1 ns units keep every stock constant integral.
std::int64_t to_units(double us) {
    return std::llround(us * 10000.0);
}

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
    return (num + den - 1) / den;
}

} // namespace

std::int64_t break_even(const OffloadScenario& s, BreakEvenRounding rounding) {
    if (s.exchange_count < 1) {
        throw InvalidConfigError("an update needs at least one exchange");
    }
    if (s.update_time_us < 0 || s.plc.cost_per_term_us < 0 || s.edge.cost_per_term_us < 0) {
        throw InvalidConfigError("model costs cannot be negative");
    }
    std::int64_t diff = to_units(s.plc.cost_per_term_us) - to_units(s.edge.cost_per_term_us);
    if (diff <= 0) {
        throw NoBenefitError("edge per-term cost is not below the controller's");
    }
    if (rounding == BreakEvenRounding::reference) {
        diff -= diff % 100; // 10 ns resolution
        if (diff == 0) {
            throw NoBenefitError("per-term advantage is below the 10 ns resolution");
        }
    }
    const std::int64_t per_exchange =
        to_units(s.network.total_us()) + to_units(s.overhead.total_us());
    const std::int64_t fixed =
        s.exchange_count * per_exchange + to_units(s.update_time_us);
    if (fixed < 0) {
        throw InvalidConfigError("fixed costs cannot be negative");
    }
    if (fixed == 0) {
        return 0; // offloading wins from the first term
    }
    return ceil_div(fixed, diff);
}

std::vector<BreakEvenCell> build_breakeven_table(const std::vector<Device>& devices,
                                                 BreakEvenRounding rounding) {
    std::vector<BreakEvenCell> cells;
    static constexpr int decades[3] = {1, 10, 100};
    for (Interface i : kAllInterfaces) {
        for (Device d : devices) {
            const PlcProfile& profile = PlcProfile::stock(d);
            for (int n : decades) {
                BreakEvenCell cell;
                cell.iface = i;
                cell.device = d;
                cell.n = n;
                if (!profile.supports(i)) {
                    cells.push_back(cell);
                    continue;
                }
                cell.supported = true;
                cell.n_break_even = break_even(stock_scenario(d, i, n), rounding);
                cell.estimated = profile.update_time_estimated(i, n);
                cells.push_back(cell);
            }
        }
    }
    return cells;
}

std::string scenario_to_json(const OffloadScenario& s) {
    nlohmann::json j;
    j["plc_cost_per_term_us"] = s.plc.cost_per_term_us;
    j["plc_terms_per_cycle_budget"] = s.plc.terms_per_cycle_budget;
    j["edge_cost_per_term_us"] = s.edge.cost_per_term_us;
    j["edge_terms_per_cycle_budget"] = s.edge.terms_per_cycle_budget;
    j["line_length_m"] = s.network.line_length_m;
    j["per_meter_ns"] = s.network.per_meter_ns;
    j["hops"] = s.network.hops;
    j["per_hop_us"] = s.network.per_hop_us;
    j["nic_us"] = s.overhead.nic_us;
    j["compute_us"] = s.overhead.compute_us;
    j["update_time_us"] = s.update_time_us;
    j["exchange_count"] = s.exchange_count;
    return j.dump(2);
}

OffloadScenario scenario_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidConfigError(std::string("scenario JSON does not parse: ") + e.what());
    }
    if (!j.is_object()) {
        throw InvalidConfigError("scenario JSON must be an object");
    }
    OffloadScenario s;
    s.plc = stock_cycle_model(Device::s7_1512);
    s.edge = stock_edge_cycle_model();
    try {
        s.plc.cost_per_term_us = j.value("plc_cost_per_term_us", s.plc.cost_per_term_us);
        s.plc.terms_per_cycle_budget =
            j.value("plc_terms_per_cycle_budget", s.plc.terms_per_cycle_budget);
        s.edge.cost_per_term_us = j.value("edge_cost_per_term_us", s.edge.cost_per_term_us);
        s.edge.terms_per_cycle_budget =
            j.value("edge_terms_per_cycle_budget", s.edge.terms_per_cycle_budget);
        s.network.line_length_m = j.value("line_length_m", s.network.line_length_m);
        s.network.per_meter_ns = j.value("per_meter_ns", s.network.per_meter_ns);
        s.network.hops = j.value("hops", s.network.hops);
        s.network.per_hop_us = j.value("per_hop_us", s.network.per_hop_us);
        s.overhead.nic_us = j.value("nic_us", s.overhead.nic_us);
        s.overhead.compute_us = j.value("compute_us", s.overhead.compute_us);
        s.update_time_us = j.value("update_time_us", s.update_time_us);
        s.exchange_count = j.value("exchange_count", s.exchange_count);
    } catch (const nlohmann::json::type_error& e) {
        throw InvalidConfigError(std::string("scenario JSON field has wrong type: ") + e.what());
    }
    return s;
}

} // namespace offload
} // namespace plcbench
