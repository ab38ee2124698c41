#include "plcbench/emulator/emulator.hpp"

#include <chrono>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "plcbench/emulator/pacer.hpp"
#include "plcbench/errors.hpp"

namespace plcbench {
namespace emu {

namespace {

using Micros = std::chrono::microseconds;
constexpr net::Millis kPollSlice(100);
constexpr net::Millis kReplyTimeout(5000);
constexpr size_t kRecvChunk = 16384;

std::int64_t unix_time_100ns() {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    // OPC UA epoch, 1601-01-01, in 100 ns ticks.
    return std::chrono::duration_cast<std::chrono::nanoseconds>(now).count() / 100 +
           116444736000000000LL;
}

int job_value_count(const wire::S7Message& job) {
    return static_cast<int>((job.item.byte_count + 3) / 4);
}

// Index encoded in the trailing digits of a canonical read node id.
std::uint32_t node_index(const std::string& id) {
    if (id.size() != wire::kReadNodeIdLength) {
        throw MalformedMessageError("read node id has the wrong width: " + id);
    }
    std::uint32_t index = 0;
    for (size_t i = id.size() - 6; i < id.size(); ++i) {
        if (id[i] < '0' || id[i] > '9') {
            throw MalformedMessageError("read node id does not end in an index: " + id);
        }
        index = index * 10 + static_cast<std::uint32_t>(id[i] - '0');
    }
    return index;
}

} // namespace

int PubSubConfig::total_fields() const {
    int total = 0;
    for (const auto& g : groups) {
        for (const auto& w : g.writers) {
            total += w.field_count;
        }
    }
    return total;
}

PubSubConfig default_pubsub(int n) {
    if (n < 1) {
        throw InvalidConfigError("a publisher carries at least one field");
    }
    PubSubLimits limits;
    if (n > limits.max_fields_per_dataset * limits.max_writers_per_group) {
        throw LimitExceededError("no PubSub layout carries " + std::to_string(n) +
                                 " fields; the cap is " +
                                 std::to_string(limits.max_fields_per_dataset *
                                                limits.max_writers_per_group));
    }
    PubSubWriterGroup group;
    int left = n;
    std::uint16_t id = 1;
    while (left > 0) {
        PubSubWriter w;
        w.writer_id = id++;
        w.field_count = std::min(left, limits.max_fields_per_dataset);
        left -= w.field_count;
        group.writers.push_back(w);
    }
    PubSubConfig cfg;
    cfg.groups.push_back(std::move(group));
    return cfg;
}

void validate_pubsub(const PubSubConfig& cfg, const PlcProfile& profile) {
    if (!profile.supports(Interface::uadp)) {
        throw UnsupportedInterfaceError(std::string(to_string(profile.model())) +
                                        " has no PubSub stack");
    }
    if (cfg.groups.size() != 1) {
        throw InvalidConfigError("exactly one writer group is supported");
    }
    const PubSubLimits& limits = profile.pubsub_limits();
    const PubSubWriterGroup& g = cfg.groups.front();
    if (g.writers.empty() ||
        static_cast<int>(g.writers.size()) > limits.max_writers_per_group) {
        throw LimitExceededError("a writer group carries 1 to " +
                                 std::to_string(limits.max_writers_per_group) +
                                 " writers, got " + std::to_string(g.writers.size()));
    }
    for (const PubSubWriter& w : g.writers) {
        if (w.field_count < 1 || w.field_count > limits.max_fields_per_dataset) {
            throw LimitExceededError("a dataset carries 1 to " +
                                     std::to_string(limits.max_fields_per_dataset) +
                                     " fields, got " + std::to_string(w.field_count));
        }
    }
    if (g.publish_interval_us < 0) {
        throw InvalidConfigError("publish interval cannot be negative");
    }
    if (g.publish_interval_us > 0) {
        const std::int64_t floor =
            profile.response_floor_us(Interface::uadp, cfg.total_fields());
        if (g.publish_interval_us < floor) {
            throw InvalidConfigError("publish interval " +
                                     std::to_string(g.publish_interval_us) +
                                     " us is below the device floor of " +
                                     std::to_string(floor) + " us");
        }
    }
}

namespace {

using nlohmann::json;

std::uint16_t get_port(const json& j, const char* key, std::uint16_t fallback) {
    const std::int64_t v = j.value(key, static_cast<std::int64_t>(fallback));
    if (v < 0 || v > 0xFFFF) {
        throw InvalidConfigError(std::string(key) + " is not a port number");
    }
    return static_cast<std::uint16_t>(v);
}

json push_to_json(const OucPushConfig& p) {
    return json{{"host", p.host},   {"port", p.port},
                {"n", p.n},         {"db", p.db},
                {"start", p.start}, {"byte_order", wire::to_string(p.order)}};
}

OucPushConfig push_from_json(const json& j) {
    OucPushConfig p;
    p.host = j.value("host", p.host);
    p.port = get_port(j, "port", p.port);
    p.n = j.value("n", p.n);
    p.db = static_cast<std::uint16_t>(j.value("db", static_cast<int>(p.db)));
    p.start = j.value("start", p.start);
    p.order = wire::byte_order_from_string(j.value("byte_order", "big"));
    return p;
}

json pubsub_to_json(const PubSubConfig& cfg) {
    json groups = json::array();
    for (const auto& g : cfg.groups) {
        json writers = json::array();
        for (const auto& w : g.writers) {
            writers.push_back({{"writer_id", w.writer_id}, {"field_count", w.field_count}});
        }
        groups.push_back({{"group_id", g.group_id},
                          {"publish_interval_us", g.publish_interval_us},
                          {"writers", writers}});
    }
    return json{{"groups", groups}};
}

PubSubConfig pubsub_from_json(const json& j) {
    PubSubConfig cfg;
    for (const json& gj : j.value("groups", json::array())) {
        PubSubWriterGroup g;
        g.group_id = static_cast<std::uint16_t>(gj.value("group_id", 1));
        g.publish_interval_us = gj.value("publish_interval_us", static_cast<std::int64_t>(0));
        for (const json& wj : gj.value("writers", json::array())) {
            PubSubWriter w;
            w.writer_id = static_cast<std::uint16_t>(wj.value("writer_id", 1));
            w.field_count = wj.value("field_count", 10);
            g.writers.push_back(w);
        }
        cfg.groups.push_back(std::move(g));
    }
    return cfg;
}

} // namespace

EmulatorConfig EmulatorConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidConfigError(std::string("emulator JSON does not parse: ") + e.what());
    }
    if (!j.is_object()) {
        throw InvalidConfigError("emulator JSON must be an object");
    }
    EmulatorConfig cfg;
    try {
        cfg.profile = device_from_string(j.value("profile", "s7-1512"));
        cfg.seed = j.value("seed", cfg.seed);
        if (j.contains("data_blocks")) {
            cfg.data_blocks.clear();
            for (const auto& [key, value] : j.at("data_blocks").items()) {
                cfg.data_blocks[static_cast<std::uint16_t>(std::stoi(key))] =
                    value.get<std::uint32_t>();
            }
        }
        if (j.contains("s7_server")) {
            S7ServerConfig s;
            s.host = j["s7_server"].value("host", s.host);
            s.port = get_port(j["s7_server"], "port", s.port);
            cfg.s7_server = s;
        }
        if (j.contains("opcua_server")) {
            OpcUaServerConfig s;
            const json& sj = j["opcua_server"];
            s.host = sj.value("host", s.host);
            s.port = get_port(sj, "port", s.port);
            s.db = static_cast<std::uint16_t>(sj.value("db", static_cast<int>(s.db)));
            s.start = sj.value("start", s.start);
            cfg.opcua_server = s;
        }
        if (j.contains("ouc_udp_push")) {
            cfg.ouc_udp_push = push_from_json(j["ouc_udp_push"]);
        }
        if (j.contains("ouc_tcp_push")) {
            cfg.ouc_tcp_push = push_from_json(j["ouc_tcp_push"]);
        }
        if (j.contains("opcua_write_push")) {
            OpcUaWritePushConfig p;
            const json& pj = j["opcua_write_push"];
            p.host = pj.value("host", p.host);
            p.port = get_port(pj, "port", p.port);
            p.n = pj.value("n", p.n);
            p.db = static_cast<std::uint16_t>(pj.value("db", static_cast<int>(p.db)));
            p.start = pj.value("start", p.start);
            cfg.opcua_write_push = p;
        }
        if (j.contains("uadp_publish")) {
            UadpPublishConfig p;
            const json& pj = j["uadp_publish"];
            p.group = pj.value("group", p.group);
            p.port = get_port(pj, "port", p.port);
            p.interface_addr = pj.value("interface", p.interface_addr);
            p.publisher_id =
                static_cast<std::uint16_t>(pj.value("publisher_id", static_cast<int>(p.publisher_id)));
            p.db = static_cast<std::uint16_t>(pj.value("db", static_cast<int>(p.db)));
            p.start = pj.value("start", p.start);
            if (pj.contains("pubsub")) {
                p.pubsub = pubsub_from_json(pj["pubsub"]);
            } else {
                p.pubsub = default_pubsub(pj.value("n", 10));
            }
            cfg.uadp_publish = p;
        }
    } catch (const json::exception& e) {
        throw InvalidConfigError(std::string("emulator JSON field has wrong shape: ") +
                                 e.what());
    } catch (const std::invalid_argument&) {
        throw InvalidConfigError("data block numbers must be integers");
    }
    return cfg;
}

std::string EmulatorConfig::to_json() const {
    json j;
    j["profile"] = std::string(to_string(profile));
    j["seed"] = seed;
    json blocks = json::object();
    for (const auto& [db, size] : data_blocks) {
        blocks[std::to_string(db)] = size;
    }
    j["data_blocks"] = blocks;
    if (s7_server) {
        j["s7_server"] = {{"host", s7_server->host}, {"port", s7_server->port}};
    }
    if (opcua_server) {
        j["opcua_server"] = {{"host", opcua_server->host},
                             {"port", opcua_server->port},
                             {"db", opcua_server->db},
                             {"start", opcua_server->start}};
    }
    if (ouc_udp_push) {
        j["ouc_udp_push"] = push_to_json(*ouc_udp_push);
    }
    if (ouc_tcp_push) {
        j["ouc_tcp_push"] = push_to_json(*ouc_tcp_push);
    }
    if (opcua_write_push) {
        j["opcua_write_push"] = {{"host", opcua_write_push->host},
                                 {"port", opcua_write_push->port},
                                 {"n", opcua_write_push->n},
                                 {"db", opcua_write_push->db},
                                 {"start", opcua_write_push->start}};
    }
    if (uadp_publish) {
        j["uadp_publish"] = {{"group", uadp_publish->group},
                             {"port", uadp_publish->port},
                             {"interface", uadp_publish->interface_addr},
                             {"publisher_id", uadp_publish->publisher_id},
                             {"db", uadp_publish->db},
                             {"start", uadp_publish->start},
                             {"pubsub", pubsub_to_json(uadp_publish->pubsub)}};
    }
    return j.dump(2);
}

struct Emulator::Runtime {
    std::optional<net::TcpListener> s7_listener;
    std::optional<net::TcpListener> opcua_listener;
    std::vector<std::thread> threads;
    std::mutex conn_mutex;
    std::vector<std::thread> conn_threads;
    std::atomic<std::uint64_t> conn_seed{100};
};

Emulator::Emulator(EmulatorConfig cfg)
    : cfg_(std::move(cfg)), profile_(PlcProfile::stock(cfg_.profile)),
      store_(std::make_unique<DataBlockStore>(cfg_.data_blocks)) {
    if (cfg_.uadp_publish) {
        pending_pubsub_ = cfg_.uadp_publish->pubsub;
    }
}

Emulator::~Emulator() { stop(); }

namespace {

void require_supported(const PlcProfile& profile, Interface iface, bool configured) {
    if (configured && !profile.supports(iface)) {
        throw UnsupportedInterfaceError(std::string(to_string(profile.model())) +
                                        " does not support " + std::string(to_string(iface)));
    }
}

} // namespace

void Emulator::start() {
    if (running_) {
        throw InvalidConfigError("emulator is already running");
    }
    require_supported(profile_, Interface::s7, cfg_.s7_server.has_value());
    require_supported(profile_, Interface::opcua_read, cfg_.opcua_server.has_value());
    require_supported(profile_, Interface::ouc_udp, cfg_.ouc_udp_push.has_value());
    require_supported(profile_, Interface::ouc_tcp, cfg_.ouc_tcp_push.has_value());
    require_supported(profile_, Interface::opcua_write, cfg_.opcua_write_push.has_value());
    require_supported(profile_, Interface::uadp, cfg_.uadp_publish.has_value());
    for (const OucPushConfig* push :
         {cfg_.ouc_udp_push ? &*cfg_.ouc_udp_push : nullptr,
          cfg_.ouc_tcp_push ? &*cfg_.ouc_tcp_push : nullptr}) {
        if (push) {
            if (push->n < 1 || push->port == 0) {
                throw InvalidConfigError("a push endpoint needs a port and a value count");
            }
            store_->read_values(push->db, push->start, push->n,
                                wire::ByteOrder::big_endian); // range check up front
        }
    }
    if (cfg_.opcua_write_push) {
        if (cfg_.opcua_write_push->n < 1 || cfg_.opcua_write_push->port == 0) {
            throw InvalidConfigError("the write push endpoint needs a port and a value count");
        }
        store_->read_values(cfg_.opcua_write_push->db, cfg_.opcua_write_push->start,
                            cfg_.opcua_write_push->n, wire::ByteOrder::big_endian);
    }
    if (cfg_.uadp_publish) {
        {
            std::lock_guard lock(pubsub_mutex_);
            cfg_.uadp_publish->pubsub = pending_pubsub_;
        }
        validate_pubsub(cfg_.uadp_publish->pubsub, profile_);
        store_->read_values(cfg_.uadp_publish->db, cfg_.uadp_publish->start,
                            cfg_.uadp_publish->pubsub.total_fields(),
                            wire::ByteOrder::big_endian);
    }

    rt_ = std::make_unique<Runtime>();
    stop_ = false;
    try {
        if (cfg_.s7_server) {
            rt_->s7_listener = net::TcpListener::bind(cfg_.s7_server->host,
                                                      cfg_.s7_server->port);
            rt_->threads.emplace_back([this] { s7_server_loop(); });
        }
        if (cfg_.opcua_server) {
            rt_->opcua_listener = net::TcpListener::bind(cfg_.opcua_server->host,
                                                         cfg_.opcua_server->port);
            rt_->threads.emplace_back([this] { opcua_server_loop(); });
        }
        if (cfg_.ouc_udp_push) {
            rt_->threads.emplace_back([this] { ouc_udp_loop(); });
        }
        if (cfg_.ouc_tcp_push) {
            rt_->threads.emplace_back([this] { ouc_tcp_loop(); });
        }
        if (cfg_.opcua_write_push) {
            rt_->threads.emplace_back([this] { opcua_write_loop(); });
        }
        if (cfg_.uadp_publish) {
            rt_->threads.emplace_back([this] { uadp_loop(); });
        }
    } catch (...) {
        stop_ = true;
        for (auto& t : rt_->threads) {
            t.join();
        }
        rt_.reset();
        throw;
    }
    running_ = true;
}

void Emulator::stop() {
    if (!rt_) {
        return;
    }
    stop_ = true;
    for (auto& t : rt_->threads) {
        t.join();
    }
    std::vector<std::thread> conns;
    {
        std::lock_guard lock(rt_->conn_mutex);
        conns.swap(rt_->conn_threads);
    }
    for (auto& t : conns) {
        t.join();
    }
    rt_.reset();
    running_ = false;
}

PubSubAccept Emulator::configure_pubsub(const PubSubConfig& cfg) {
    if (!cfg_.uadp_publish) {
        throw InvalidConfigError("no publisher endpoint is configured");
    }
    validate_pubsub(cfg, profile_);
    std::lock_guard lock(pubsub_mutex_);
    pending_pubsub_ = cfg;
    if (running_) {
        return {true};
    }
    cfg_.uadp_publish->pubsub = cfg;
    return {false};
}

std::uint16_t Emulator::s7_port() const {
    if (rt_ && rt_->s7_listener) {
        return rt_->s7_listener->local_port();
    }
    return cfg_.s7_server ? cfg_.s7_server->port : 0;
}

std::uint16_t Emulator::opcua_port() const {
    if (rt_ && rt_->opcua_listener) {
        return rt_->opcua_listener->local_port();
    }
    return cfg_.opcua_server ? cfg_.opcua_server->port : 0;
}

void Emulator::s7_server_loop() {
    while (!stop_) {
        try {
            net::TcpStream conn = rt_->s7_listener->accept(kPollSlice);
            const std::uint64_t seed = rt_->conn_seed.fetch_add(1);
            std::lock_guard lock(rt_->conn_mutex);
            rt_->conn_threads.emplace_back(
                [this, seed, c = std::move(conn)]() mutable { s7_connection(std::move(c), seed); });
        } catch (const TimeoutError&) {
        } catch (const ConnectionError&) {
            if (stop_) {
                return;
            }
        }
    }
}

void Emulator::opcua_server_loop() {
    while (!stop_) {
        try {
            net::TcpStream conn = rt_->opcua_listener->accept(kPollSlice);
            const std::uint64_t seed = rt_->conn_seed.fetch_add(1);
            std::lock_guard lock(rt_->conn_mutex);
            rt_->conn_threads.emplace_back([this, seed, c = std::move(conn)]() mutable {
                opcua_connection(std::move(c), seed);
            });
        } catch (const TimeoutError&) {
        } catch (const ConnectionError&) {
            if (stop_) {
                return;
            }
        }
    }
}

namespace {

// Pulls one length-framed message out of the stream, appending to `buffer`
// across calls. Returns empty while no full frame is available yet.
template <typename LengthFn>
std::vector<std::uint8_t> next_frame(net::TcpStream& stream,
                                     std::vector<std::uint8_t>& buffer,
                                     LengthFn frame_length,
                                     const std::atomic<bool>& stop) {
    for (;;) {
        const size_t len = frame_length(std::span<const std::uint8_t>(buffer));
        if (len > 0 && buffer.size() >= len) {
            std::vector<std::uint8_t> frame(buffer.begin(),
                                            buffer.begin() + static_cast<std::ptrdiff_t>(len));
            buffer.erase(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(len));
            return frame;
        }
        if (len == 0 && buffer.size() >= 8) {
            throw MalformedMessageError("stream does not start with a known header");
        }
        if (stop.load(std::memory_order_relaxed)) {
            return {};
        }
        std::vector<std::uint8_t> chunk = stream.recv_some(kRecvChunk, kPollSlice);
        buffer.insert(buffer.end(), chunk.begin(), chunk.end());
    }
}

} // namespace

void Emulator::s7_connection(net::TcpStream stream, std::uint64_t seed) {
    TokenPacer pacer(Micros(profile_.response_floor_us(Interface::s7, 1)), seed);
    std::vector<std::uint8_t> buffer;
    try {
        while (!stop_) {
            std::vector<std::uint8_t> frame =
                next_frame(stream, buffer, wire::s7_frame_length, stop_);
            if (frame.empty()) {
                return; // stopped
            }
            const wire::S7Message request = wire::decode_s7(frame);
            if (request.kind != wire::S7Message::Kind::job) {
                return; // clients send jobs; anything else ends the session
            }
            const std::vector<wire::S7Message> acks =
                wire::handle_s7_read(request, profile_, *store_);
            pacer.set_interval(
                Micros(profile_.response_floor_us(Interface::s7, job_value_count(request))));
            for (const wire::S7Message& ack : acks) {
                if (!pacer.wait(stop_)) {
                    return;
                }
                stream.send_all(wire::encode(ack));
                pacer.mark();
                store_->advance_cycle();
            }
        }
    } catch (const Error&) {
        // Malformed traffic or a vanished peer ends the session.
    }
}

void Emulator::opcua_connection(net::TcpStream stream, std::uint64_t seed) {
    TokenPacer pacer(Micros(profile_.response_floor_us(Interface::opcua_read, 1)), seed);
    const OpcUaServerConfig server = *cfg_.opcua_server;
    std::vector<std::uint8_t> buffer;
    try {
        while (!stop_) {
            std::vector<std::uint8_t> frame =
                next_frame(stream, buffer, wire::opcua_frame_length, stop_);
            if (frame.empty()) {
                return;
            }
            const wire::OpcUaServiceMessage request = wire::decode_opcua(frame);
            if (request.kind != wire::OpcUaServiceMessage::Kind::read_request) {
                return; // this endpoint serves reads only
            }
            wire::OpcUaServiceMessage response;
            response.kind = wire::OpcUaServiceMessage::Kind::read_response;
            response.request_id = request.request_id;
            response.request_handle = request.request_handle;
            response.timestamp = unix_time_100ns();
            for (const std::string& id : request.node_ids) {
                const std::uint32_t index = node_index(id);
                const std::vector<std::uint8_t> bytes =
                    store_->read_bytes(server.db, server.start + 4 * index, 4);
                wire::OpcUaValue v;
                v.value = static_cast<std::uint32_t>(bytes[0]) << 24 |
                          static_cast<std::uint32_t>(bytes[1]) << 16 |
                          static_cast<std::uint32_t>(bytes[2]) << 8 |
                          static_cast<std::uint32_t>(bytes[3]);
                v.source_timestamp = response.timestamp;
                response.values.push_back(v);
            }
            pacer.set_interval(Micros(profile_.response_floor_us(
                Interface::opcua_read, static_cast<int>(request.node_ids.size()))));
            if (!pacer.wait(stop_)) {
                return;
            }
            stream.send_all(wire::encode(response));
            pacer.mark();
            store_->advance_cycle();
        }
    } catch (const Error&) {
    }
}

void Emulator::ouc_udp_loop() {
    const OucPushConfig push = *cfg_.ouc_udp_push;
    net::UdpSocket socket = net::UdpSocket::open();
    TokenPacer pacer(Micros(profile_.response_floor_us(Interface::ouc_udp, push.n)),
                     cfg_.seed * 1000 + 1);
    while (pacer.wait(stop_)) {
        wire::OucPayload payload;
        payload.order = push.order;
        payload.values = store_->read_values(push.db, push.start, push.n, push.order);
        try {
            socket.send_to(wire::encode(payload), push.host, push.port);
            pacer.mark();
        } catch (const ConnectionError&) {
            // Datagrams to absent receivers are dropped silently elsewhere;
            // treat local errors the same and keep the cycle.
        }
        store_->advance_cycle();
    }
}

void Emulator::ouc_tcp_loop() {
    const OucPushConfig push = *cfg_.ouc_tcp_push;
    TokenPacer pacer(Micros(profile_.response_floor_us(Interface::ouc_tcp, push.n)),
                     cfg_.seed * 1000 + 2);
    while (!stop_) {
        net::TcpStream stream;
        try {
            stream = net::TcpStream::connect(push.host, push.port, net::Millis(500));
        } catch (const ConnectionError&) {
            continue; // receiver not up yet; retry until stopped
        }
        try {
            while (pacer.wait(stop_)) {
                wire::OucPayload payload;
                payload.order = push.order;
                payload.values =
                    store_->read_values(push.db, push.start, push.n, push.order);
                stream.send_all(wire::encode(payload));
                pacer.mark();
                store_->advance_cycle();
            }
            return;
        } catch (const ConnectionError&) {
            // Peer went away; reconnect.
        }
    }
}

void Emulator::opcua_write_loop() {
    const OpcUaWritePushConfig push = *cfg_.opcua_write_push;
    TokenPacer pacer(Micros(profile_.response_floor_us(Interface::opcua_write, push.n)),
                     cfg_.seed * 1000 + 3);
    std::uint32_t request_id = 1;
    while (!stop_) {
        net::TcpStream stream;
        try {
            stream = net::TcpStream::connect(push.host, push.port, net::Millis(500));
        } catch (const ConnectionError&) {
            continue;
        }
        std::vector<std::uint8_t> buffer;
        try {
            while (pacer.wait(stop_)) {
                wire::OpcUaServiceMessage request;
                request.kind = wire::OpcUaServiceMessage::Kind::write_request;
                request.request_id = request_id;
                request.request_handle = request_id;
                request.timestamp = unix_time_100ns();
                const std::vector<std::uint32_t> values = store_->read_values(
                    push.db, push.start, push.n, wire::ByteOrder::big_endian);
                for (int i = 0; i < push.n; ++i) {
                    request.node_ids.push_back(wire::write_node_id(i));
                    wire::OpcUaValue v;
                    v.value = values[static_cast<size_t>(i)];
                    request.values.push_back(v);
                }
                stream.send_all(wire::encode(request));
                pacer.mark();
                ++request_id;
                std::vector<std::uint8_t> frame =
                    next_frame(stream, buffer, wire::opcua_frame_length, stop_);
                if (frame.empty()) {
                    return;
                }
                const wire::OpcUaServiceMessage response = wire::decode_opcua(frame);
                if (response.kind != wire::OpcUaServiceMessage::Kind::write_response ||
                    response.status_codes.size() != static_cast<size_t>(push.n)) {
                    throw MalformedMessageError("unexpected write acknowledgement");
                }
                store_->advance_cycle();
            }
            return;
        } catch (const Error&) {
            // Resync with a fresh connection.
        }
    }
}

void Emulator::uadp_loop() {
    const UadpPublishConfig pub = *cfg_.uadp_publish;
    net::UdpSocket socket = net::UdpSocket::open();
    if (net::is_multicast_address(pub.group)) {
        socket.set_multicast_interface(pub.interface_addr);
    }
    const PubSubWriterGroup& group = pub.pubsub.groups.front();
    std::int64_t interval_us = group.publish_interval_us;
    if (interval_us == 0) {
        interval_us =
            profile_.response_floor_us(Interface::uadp, pub.pubsub.total_fields());
    }
    TokenPacer pacer(Micros(interval_us), cfg_.seed * 1000 + 4);
    while (pacer.wait(stop_)) {
        wire::UadpNetworkMessage message;
        message.publisher_id = pub.publisher_id;
        message.writer_group_id = group.group_id;
        message.group_version = 1;
        const std::vector<std::uint32_t> values =
            store_->read_values(pub.db, pub.start, pub.pubsub.total_fields(),
                                wire::ByteOrder::big_endian);
        size_t next_value = 0;
        for (const PubSubWriter& w : group.writers) {
            wire::UadpDataSetMessage dsm;
            dsm.writer_id = w.writer_id;
            for (int i = 0; i < w.field_count; ++i) {
                wire::UadpField f;
                f.value = values[next_value++];
                dsm.fields.push_back(f);
            }
            message.writers.push_back(std::move(dsm));
        }
        try {
            socket.send_to(wire::encode(message), pub.group, pub.port);
            pacer.mark();
        } catch (const ConnectionError&) {
        }
        store_->advance_cycle();
    }
}

} // namespace emu
} // namespace plcbench
