#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"

#include "plcbench/emulator/emulator.hpp"
#include "plcbench/errors.hpp"
#include "plcbench/harness/measurement.hpp"

using namespace plcbench;
using namespace plcbench::harness;

TEST_CASE("gap statistics") {
    const std::vector<std::int64_t> gaps = {100, 200, 300, 400};
    const UpdateTimeStats stats = summarize_gaps(gaps, 0);
    CHECK(stats.count == 4);
    CHECK(stats.min_us == 100);
    CHECK(stats.mean_us == doctest::Approx(250.0));
    CHECK(stats.p50_us == doctest::Approx(250.0));
    CHECK(stats.p99_us == doctest::Approx(397.0)); // interpolated between 300 and 400
}

TEST_CASE("warmup gaps are discarded") {
    const std::vector<std::int64_t> gaps = {5000, 9000, 100, 200, 300, 400};
    const UpdateTimeStats stats = summarize_gaps(gaps, 2);
    CHECK(stats.count == 4);
    CHECK(stats.min_us == 100);
    CHECK(stats.mean_us == doctest::Approx(250.0));
}

TEST_CASE("a single outlier moves the tail, not the median") {
    std::vector<std::int64_t> gaps(99, 100);
    gaps.push_back(10000);
    const UpdateTimeStats stats = summarize_gaps(gaps, 0);
    CHECK(stats.min_us == 100);
    CHECK(stats.p50_us == doctest::Approx(100.0));
    CHECK(stats.mean_us == doctest::Approx(199.0));
    CHECK(stats.p99_us == doctest::Approx(199.0));
}

TEST_CASE("summaries demand enough gaps") {
    CHECK_THROWS_AS(summarize_gaps(std::vector<std::int64_t>{}, 0),
                    InsufficientSamplesError);
    CHECK_THROWS_AS(summarize_gaps(std::vector<std::int64_t>{100}, 0),
                    InsufficientSamplesError);
    CHECK_THROWS_AS(summarize_gaps(std::vector<std::int64_t>{100, 200, 300}, 2),
                    InsufficientSamplesError);
    CHECK_THROWS_AS(summarize_gaps(std::vector<std::int64_t>{100, 200}, -1),
                    InvalidConfigError);
}

TEST_CASE("runs turn timestamps into gaps") {
    MeasurementRun run;
    run.timestamps_us = {0, 10, 25, 45};
    CHECK(run.gaps_us() == std::vector<std::int64_t>{10, 15, 20});
    run.timestamps_us = {7};
    CHECK(run.gaps_us().empty());

    run.timestamps_us = {0, 100, 200, 300, 400, 500};
    run.warmup = 1;
    const UpdateTimeStats stats = summarize(run);
    CHECK(stats.count == 4);
    CHECK(stats.min_us == 100);
}

TEST_CASE("run CSV round trip") {
    MeasurementRun run;
    run.iface = Interface::s7;
    run.device = Device::s7_314;
    run.n = 50;
    run.warmup = 5;
    run.timestamps_us = {1000, 3000, 5001};

    const std::string csv = run_to_csv(run);
    CHECK(csv.find("# plcbench ") == 0);
    CHECK(csv.find("interface=s7") != std::string::npos);
    CHECK(csv.find("device=s7-314") != std::string::npos);
    CHECK(csv.find("timestamp_us\n") != std::string::npos);

    const MeasurementRun back = run_from_csv(csv);
    CHECK(back.iface == Interface::s7);
    CHECK(back.device == Device::s7_314);
    CHECK(back.n == 50);
    CHECK(back.warmup == 5);
    CHECK(back.timestamps_us == run.timestamps_us);
}

TEST_CASE("run CSV rejects broken input") {
    CHECK_THROWS_AS(run_from_csv(""), InvalidConfigError);
    CHECK_THROWS_AS(run_from_csv("timestamp_us\n1\n2\n"), InvalidConfigError);
    CHECK_THROWS_AS(run_from_csv("# interface=s7 device=314 n=1 warmup=0\n1\n2\n"),
                    InvalidConfigError);
    const std::string good_header =
        "# interface=ouc-udp device=s7-1512 n=4 warmup=0\ntimestamp_us\n";
    CHECK_THROWS_AS(run_from_csv(good_header + "abc\n"), InvalidConfigError);
    CHECK_NOTHROW(run_from_csv(good_header + "12\n34\n"));
}

TEST_CASE("stats JSON carries the run coordinates") {
    MeasurementRun run;
    run.iface = Interface::uadp;
    run.device = Device::s7_1512;
    run.n = 10;
    run.warmup = 2;
    run.timestamps_us = {0, 1000, 2000, 3000, 4000, 5000};
    const UpdateTimeStats stats = summarize(run);

    const nlohmann::json j = nlohmann::json::parse(stats_to_json(run, stats));
    CHECK(j.at("tool") == "plcbench");
    CHECK(j.at("interface") == "uadp");
    CHECK(j.at("device") == "s7-1512");
    CHECK(j.at("n") == 10);
    CHECK(j.at("warmup") == 2);
    CHECK(j.at("samples") == 6);
    CHECK(j.at("count") == 3);
    CHECK(j.at("min_us") == 1000);
    CHECK(j.at("mean_us").get<double>() == doctest::Approx(1000.0));
    CHECK(j.contains("version"));
    CHECK(j.contains("p50_us"));
    CHECK(j.contains("p99_us"));
}

TEST_CASE("measurement configs are validated up front") {
    MeasurementConfig cfg;
    cfg.port = 0;
    CHECK_THROWS_AS(run_measurement(cfg), InvalidConfigError);

    cfg.port = 39901;
    cfg.n = 0;
    CHECK_THROWS_AS(run_measurement(cfg), InvalidConfigError);

    cfg.n = 1;
    cfg.samples = 7;
    cfg.warmup = 5;
    CHECK_THROWS_AS(run_measurement(cfg), InvalidConfigError);

    cfg.warmup = -1;
    cfg.samples = 155;
    CHECK_THROWS_AS(run_measurement(cfg), InvalidConfigError);
}

TEST_CASE("loopback measurement respects the device floor") {
    emu::EmulatorConfig ecfg;
    ecfg.profile = Device::s7_314;
    emu::OucPushConfig push;
    push.port = 38971;
    push.n = 4;
    ecfg.ouc_udp_push = push;
    emu::Emulator emulator(ecfg);
    emulator.start();

    MeasurementConfig cfg;
    cfg.iface = Interface::ouc_udp;
    cfg.device = Device::s7_314;
    cfg.n = 4;
    cfg.samples = 10;
    cfg.warmup = 3;
    cfg.port = 38971;
    const MeasurementRun run = run_measurement(cfg);
    emulator.stop();

    CHECK(run.timestamps_us.size() == 10);
    const UpdateTimeStats stats = summarize(run);
    CHECK(stats.count == 6);
    // 4 values sit in the 10-value decade: 1.00 ms floor on this device
    CHECK(stats.min_us >= 1000);
}
