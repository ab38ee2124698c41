#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "plcbench/emulator/store.hpp"
#include "plcbench/net/socket.hpp"
#include "plcbench/profiles.hpp"
#include "plcbench/wire/codecs.hpp"

namespace plcbench {
namespace emu {

struct S7ServerConfig {
    std::string host = "127.0.0.1";
    std::uint16_t port = 102;
};

struct OpcUaServerConfig {
    std::string host = "127.0.0.1";
    std::uint16_t port = 4840;
    std::uint16_t db = 1;
    std::uint32_t start = 0;
};

// Cyclic unsolicited sender, used for OUC over UDP and TCP alike.
struct OucPushConfig {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
    int n = 10;
    std::uint16_t db = 1;
    std::uint32_t start = 0;
    wire::ByteOrder order = wire::ByteOrder::big_endian;
};

// Client-side writer: the controller pushes write requests to an edge server.
struct OpcUaWritePushConfig {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
    int n = 10;
    std::uint16_t db = 1;
    std::uint32_t start = 0;
};

struct PubSubWriter {
    std::uint16_t writer_id = 1;
    int field_count = 10;
};

struct PubSubWriterGroup {
    std::uint16_t group_id = 1;
    // 0 selects the device floor for the configured field count.
    std::int64_t publish_interval_us = 0;
    std::vector<PubSubWriter> writers;
};

struct PubSubConfig {
    std::vector<PubSubWriterGroup> groups;

    int total_fields() const;
};

struct PubSubAccept {
    bool restart_required = false;
};

struct UadpPublishConfig {
    std::string group = "239.0.0.1";
    std::uint16_t port = 4841;
    std::string interface_addr = "127.0.0.1";
    std::uint16_t publisher_id = 1;
    std::uint16_t db = 1;
    std::uint32_t start = 0;
    PubSubConfig pubsub;
};

struct EmulatorConfig {
    Device profile = Device::s7_1512;
    std::uint64_t seed = 1;
    std::map<std::uint16_t, std::uint32_t> data_blocks = {{1, 4096}};
    std::optional<S7ServerConfig> s7_server;
    std::optional<OpcUaServerConfig> opcua_server;
    std::optional<OucPushConfig> ouc_udp_push;
    std::optional<OucPushConfig> ouc_tcp_push;
    std::optional<OpcUaWritePushConfig> opcua_write_push;
    std::optional<UadpPublishConfig> uadp_publish;

    static EmulatorConfig from_json(const std::string& text); // throws InvalidConfigError
    std::string to_json() const;
};

// Default PubSub shape for n values: datasets of up to 10 fields, filled
// writer by writer. Throws LimitExceededError past 2 writers of 10.
PubSubConfig default_pubsub(int n);

// Validates a PubSub configuration against a device's limits without
// touching any emulator. Throws LimitExceededError or InvalidConfigError.
void validate_pubsub(const PubSubConfig& cfg, const PlcProfile& profile);

// A software controller that speaks the configured interfaces with the
// device's update-time behavior. Servers answer whoever connects; pushers
// send cyclically at the device floor for their value count.
class Emulator {
public:
    explicit Emulator(EmulatorConfig cfg);
    ~Emulator();
    Emulator(const Emulator&) = delete;
    Emulator& operator=(const Emulator&) = delete;

    // Validates against the profile, binds the servers, spawns the loops.
    void start();
    void stop();
    bool running() const { return running_; }

    // Stages a new PubSub layout. While the publisher runs, the change only
    // takes effect on the next start and the accept says so.
    PubSubAccept configure_pubsub(const PubSubConfig& cfg);

    DataBlockStore& store() { return *store_; }
    const EmulatorConfig& config() const { return cfg_; }
    const PlcProfile& profile() const { return profile_; }

    // Ports actually bound, for configs that asked for ephemeral ones.
    std::uint16_t s7_port() const;
    std::uint16_t opcua_port() const;

private:
    struct Runtime;

    void s7_server_loop();
    void opcua_server_loop();
    void s7_connection(net::TcpStream stream, std::uint64_t seed);
    void opcua_connection(net::TcpStream stream, std::uint64_t seed);
    void ouc_udp_loop();
    void ouc_tcp_loop();
    void opcua_write_loop();
    void uadp_loop();

    EmulatorConfig cfg_;
    const PlcProfile& profile_;
    std::unique_ptr<DataBlockStore> store_;
    std::unique_ptr<Runtime> rt_;
    std::atomic<bool> stop_{true};
    bool running_ = false;
    std::mutex pubsub_mutex_;
    PubSubConfig pending_pubsub_;
};

} // namespace emu
} // namespace plcbench
