#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "plcbench/emulator/emulator.hpp"
#include "plcbench/errors.hpp"
#include "plcbench/frame_model.hpp"
#include "plcbench/harness/measurement.hpp"
#include "plcbench/offload_model.hpp"
#include "plcbench/profiles.hpp"
#include "plcbench/version.hpp"
#include "plcbench/wire/codecs.hpp"
#include "plcbench/wire/selftest.hpp"

namespace py = pybind11;
using namespace plcbench;

namespace {

const char* metadata_name(MetadataLevel m) {
    switch (m) {
    case MetadataLevel::none: return "none";
    case MetadataLevel::partial: return "partial";
    case MetadataLevel::full: return "full";
    }
    return "none";
}

offload::BreakEvenRounding parse_rounding(const std::string& name) {
    if (name == "reference") {
        return offload::BreakEvenRounding::reference;
    }
    if (name == "exact") {
        return offload::BreakEvenRounding::exact;
    }
    throw UnknownNameError("unknown rounding: " + name);
}

py::dict efficiency_row_dict(const frame::EfficiencyRow& row) {
    py::dict d;
    d["interface"] = std::string(to_string(row.iface));
    d["device"] = std::string(to_string(row.device));
    d["n"] = row.n;
    d["supported"] = row.supported;
    if (row.supported) {
        d["payload_bytes"] = row.payload_bytes;
        d["total_bytes"] = row.total_bytes;
        d["exchange_bytes"] = row.exchange_bytes;
        d["efficiency_tenths"] = row.efficiency_tenths;
        d["efficiency_pct"] = frame::format_pct_tenths(row.efficiency_tenths);
        d["estimated"] = row.estimated;
        d["split"] = row.split_exchange;
    }
    return d;
}

py::dict stats_dict(const harness::UpdateTimeStats& st) {
    py::dict d;
    d["count"] = st.count;
    d["min_us"] = st.min_us;
    d["mean_us"] = st.mean_us;
    d["p50_us"] = st.p50_us;
    d["p99_us"] = st.p99_us;
    return d;
}

} // namespace

PYBIND11_MODULE(_plcbench, m) {
    m.doc() = "field-level controller communication toolkit";
    m.attr("__version__") = std::string(kVersion);

    // Later registrations are tried first; keep the most specific ones last.
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const TimeoutError& e) {
            PyErr_SetString(PyExc_TimeoutError, e.what());
        } catch (const ConnectionError& e) {
            PyErr_SetString(PyExc_ConnectionError, e.what());
        } catch (const InvalidConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const LimitExceededError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
    py::register_exception<NoBenefitError>(m, "NoBenefitError");

    m.def("devices", [] {
        std::vector<std::string> names;
        for (Device d : kAllDevices) {
            names.emplace_back(to_string(d));
        }
        return names;
    });
    m.def("interfaces", [] {
        std::vector<std::string> names;
        for (Interface i : kAllInterfaces) {
            names.emplace_back(to_string(i));
        }
        return names;
    });
    m.def("message_names", [] {
        std::vector<std::string> names;
        for (frame::MessageName name : frame::kAllMessages) {
            names.emplace_back(frame::to_string(name));
        }
        return names;
    });

    m.def(
        "message_size",
        [](const std::string& message, int n) {
            return frame::message_size(frame::message_from_string(message), n);
        },
        py::arg("message"), py::arg("n"),
        "Wire bytes of one message carrying n values, acknowledge included.");
    m.def(
        "wire_frame_bytes",
        [](const std::string& iface, std::int64_t payload_len) {
            return wire::wire_frame_bytes(interface_from_string(iface),
                                          static_cast<size_t>(payload_len));
        },
        py::arg("interface"), py::arg("payload_len"));
    m.def(
        "exchange_total_bytes",
        [](const std::string& iface, int n, const std::string& device) {
            return frame::exchange_total_bytes(interface_from_string(iface), n,
                                               PlcProfile::stock(device_from_string(device)));
        },
        py::arg("interface"), py::arg("n"), py::arg("device") = "s7-1512");
    m.def(
        "efficiency_report",
        [](const std::vector<std::string>& devices,
           const std::vector<std::string>& interfaces, const std::vector<int>& n_values) {
            std::vector<Device> ds;
            for (const std::string& name : devices) {
                ds.push_back(device_from_string(name));
            }
            if (ds.empty()) {
                ds.assign(kAllDevices.begin(), kAllDevices.end());
            }
            std::vector<Interface> is;
            for (const std::string& name : interfaces) {
                is.push_back(interface_from_string(name));
            }
            py::list rows;
            for (const frame::EfficiencyRow& row :
                 frame::build_efficiency_report(ds, is, n_values).rows) {
                rows.append(efficiency_row_dict(row));
            }
            return rows;
        },
        py::arg("devices") = std::vector<std::string>{},
        py::arg("interfaces") = std::vector<std::string>{},
        py::arg("n_values") = std::vector<int>{});
    m.def("format_pct_tenths", &frame::format_pct_tenths, py::arg("tenths"));
    m.def("efficiency_pct_tenths", &frame::efficiency_pct_tenths, py::arg("payload"),
          py::arg("total"));

    m.def("leibniz_pi", &offload::leibniz_pi, py::arg("n"),
          "Alternating-series approximation of pi after n+1 terms.");
    m.def("leibniz_error_bound", &offload::leibniz_error_bound, py::arg("n"));
    m.def("matches_pi_prefix", &offload::matches_pi_prefix, py::arg("x"), py::arg("digits"));
    m.def(
        "digits_required",
        [](int digits) {
            const offload::DigitsRequirement r = offload::digits_required(digits);
            py::dict d;
            d["digits"] = r.digits;
            d["table_n"] = r.table_n;
            d["prefix"] = r.prefix;
            d["minimal_n"] = r.minimal_n;
            return d;
        },
        py::arg("digits"));
    m.def(
        "stock_scenario_json",
        [](const std::string& device, const std::string& iface, int n) {
            return offload::scenario_to_json(offload::stock_scenario(
                device_from_string(device), interface_from_string(iface), n));
        },
        py::arg("device"), py::arg("interface"), py::arg("n"));
    m.def(
        "break_even",
        [](const std::string& scenario_json, const std::string& rounding) {
            return offload::break_even(offload::scenario_from_json(scenario_json),
                                       parse_rounding(rounding));
        },
        py::arg("scenario_json"), py::arg("rounding") = "reference",
        "Smallest term count from which offloading pays; raises NoBenefitError "
        "when it never does.");
    m.def(
        "breakeven_table",
        [](const std::string& rounding) {
            py::list rows;
            for (const offload::BreakEvenCell& cell :
                 offload::build_breakeven_table({Device::s7_314, Device::s7_1512},
                                                parse_rounding(rounding))) {
                py::dict d;
                d["interface"] = std::string(to_string(cell.iface));
                d["device"] = std::string(to_string(cell.device));
                d["n"] = cell.n;
                d["supported"] = cell.supported;
                if (cell.supported) {
                    d["n_break_even"] = cell.n_break_even;
                    d["estimated"] = cell.estimated;
                }
                rows.append(d);
            }
            return rows;
        },
        py::arg("rounding") = "reference");

    m.def(
        "update_time_us",
        [](const std::string& device, const std::string& iface, int n) {
            return PlcProfile::stock(device_from_string(device))
                .update_time_us(interface_from_string(iface), n);
        },
        py::arg("device"), py::arg("interface"), py::arg("n"));
    m.def(
        "split_count",
        [](const std::string& device, int n) {
            return PlcProfile::stock(device_from_string(device)).split_count(n);
        },
        py::arg("device"), py::arg("n"));
    m.def(
        "profile_info",
        [](const std::string& device) {
            const PlcProfile& p = PlcProfile::stock(device_from_string(device));
            py::dict d;
            d["model"] = std::string(to_string(p.model()));
            d["name"] = std::string(p.name());
            if (p.pdu_limit()) {
                d["pdu_limit"] = *p.pdu_limit();
            } else {
                d["pdu_limit"] = py::none();
            }
            d["max_values_per_job"] = p.max_values_per_job();
            d["max_fields_per_dataset"] = p.pubsub_limits().max_fields_per_dataset;
            d["max_writers_per_group"] = p.pubsub_limits().max_writers_per_group;
            std::vector<std::string> names;
            for (Interface i : p.supported_interfaces()) {
                names.emplace_back(to_string(i));
            }
            d["interfaces"] = names;
            return d;
        },
        py::arg("device"));
    m.def(
        "interface_info",
        [](const std::string& iface) {
            const InterfaceTraits& t = interface_traits(interface_from_string(iface));
            py::dict d;
            d["name"] = std::string(to_string(t.iface));
            d["label"] = std::string(t.label);
            d["plug_and_play"] = t.plug_and_play;
            d["metadata"] = metadata_name(t.metadata);
            d["tcp_based"] = t.tcp_based;
            d["plc_is_server"] = t.plc_is_server;
            return d;
        },
        py::arg("interface"));

    m.def(
        "encode_ouc",
        [](const std::vector<std::uint32_t>& values, const std::string& order) {
            wire::OucPayload payload;
            payload.values = values;
            payload.order = wire::byte_order_from_string(order);
            const std::vector<std::uint8_t> bytes = wire::encode(payload);
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        py::arg("values"), py::arg("order") = "big");
    m.def(
        "decode_ouc",
        [](const py::bytes& data, const std::string& order) {
            const std::string buf = data;
            const wire::OucPayload payload = wire::decode_ouc(
                {reinterpret_cast<const std::uint8_t*>(buf.data()), buf.size()},
                wire::byte_order_from_string(order));
            return payload.values;
        },
        py::arg("data"), py::arg("order") = "big");
    m.def(
        "roundtrip_selftest",
        [](int trials, std::uint64_t seed) {
            std::vector<wire::SelftestResult> results;
            {
                py::gil_scoped_release release;
                results = wire::roundtrip_selftest(trials, seed);
            }
            py::list rows;
            for (const wire::SelftestResult& r : results) {
                py::dict d;
                d["check"] = r.check;
                d["cases"] = r.cases;
                d["ok"] = r.ok;
                d["detail"] = r.detail;
                rows.append(d);
            }
            return rows;
        },
        py::arg("trials") = 1000, py::arg("seed") = 42);

    m.def(
        "summarize_gaps",
        [](const std::vector<std::int64_t>& gaps, int warmup) {
            return stats_dict(harness::summarize_gaps(gaps, warmup));
        },
        py::arg("gaps"), py::arg("warmup") = 0);
    m.def(
        "run_measurement",
        [](const std::string& iface, const std::string& device, int n, int port,
           int samples, int warmup, const std::string& host, const std::string& group,
           const std::string& interface_addr, int db, std::int64_t start,
           const std::string& byte_order, int timeout_ms) {
            harness::MeasurementConfig cfg;
            cfg.iface = interface_from_string(iface);
            cfg.device = device_from_string(device);
            cfg.n = n;
            cfg.samples = samples;
            cfg.warmup = warmup;
            cfg.host = host;
            cfg.port = static_cast<std::uint16_t>(port);
            cfg.group = group;
            cfg.interface_addr = interface_addr;
            cfg.db = static_cast<std::uint16_t>(db);
            cfg.start = static_cast<std::uint32_t>(start);
            cfg.order = wire::byte_order_from_string(byte_order);
            cfg.timeout = net::Millis(timeout_ms);
            harness::MeasurementRun run;
            harness::UpdateTimeStats st;
            {
                py::gil_scoped_release release;
                run = harness::run_measurement(cfg);
                st = harness::summarize(run);
            }
            py::dict d = stats_dict(st);
            d["interface"] = std::string(to_string(run.iface));
            d["device"] = std::string(to_string(run.device));
            d["n"] = run.n;
            d["warmup"] = run.warmup;
            d["timestamps_us"] = run.timestamps_us;
            return d;
        },
        py::arg("interface"), py::arg("device"), py::arg("n"), py::arg("port"),
        py::arg("samples") = 155, py::arg("warmup") = 50,
        py::arg("host") = "127.0.0.1", py::arg("group") = "239.0.0.1",
        py::arg("interface_addr") = "127.0.0.1", py::arg("db") = 1, py::arg("start") = 0,
        py::arg("byte_order") = "big", py::arg("timeout_ms") = 10000,
        "Observes `samples` updates over a live interface and summarizes the gaps.");

    py::class_<emu::Emulator>(m, "Emulator",
                              "Software controller speaking the configured interfaces "
                              "with the device's update-time behavior.")
        .def(py::init([](const std::string& config_json) {
                 return std::make_unique<emu::Emulator>(
                     emu::EmulatorConfig::from_json(config_json));
             }),
             py::arg("config_json") = "{}")
        .def("start", &emu::Emulator::start, py::call_guard<py::gil_scoped_release>())
        .def("stop", &emu::Emulator::stop, py::call_guard<py::gil_scoped_release>())
        .def("running", &emu::Emulator::running)
        .def("s7_port", &emu::Emulator::s7_port)
        .def("opcua_port", &emu::Emulator::opcua_port)
        .def("config_json", [](const emu::Emulator& e) { return e.config().to_json(); })
        .def(
            "read_bytes",
            [](emu::Emulator& e, int db, std::int64_t start, std::int64_t count) {
                const std::vector<std::uint8_t> bytes =
                    e.store().read_bytes(static_cast<std::uint16_t>(db),
                                         static_cast<std::uint32_t>(start),
                                         static_cast<std::uint32_t>(count));
                return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
            },
            py::arg("db"), py::arg("start"), py::arg("count"))
        .def("__enter__",
             [](py::object self) {
                 emu::Emulator& e = self.cast<emu::Emulator&>();
                 if (!e.running()) {
                     py::gil_scoped_release release;
                     e.start();
                 }
                 return self;
             })
        .def("__exit__", [](emu::Emulator& e, const py::object&, const py::object&,
                            const py::object&) {
            py::gil_scoped_release release;
            e.stop();
            return false;
        });
}
