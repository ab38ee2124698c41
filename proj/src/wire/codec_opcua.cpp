#include <charconv>
#include <cstdio>

#include "plcbench/errors.hpp"
#include "plcbench/wire/codecs.hpp"

namespace plcbench {
namespace wire {

// Binary service messages on a plain-text secure channel, little-endian:
//   transport  24 bytes  MSGF, size, channel id, token id, sequence, request id
//   type id     4 bytes  numeric node of the service encoding
//   header     29 bytes requests / 24 bytes responses
//   padding    length-prefixed zero block sized so every encoded message
//              matches the frame model byte for byte
//   body       service arrays
// Write requests address numeric registered nodes (4 byte ids); read requests
// address browse-style string nodes of fixed width. That asymmetry is what
// the per-item sizes of the two services require.

namespace {

constexpr std::uint16_t kTypeReadRequest = 631;
constexpr std::uint16_t kTypeReadResponse = 634;
constexpr std::uint16_t kTypeWriteRequest = 673;
constexpr std::uint16_t kTypeWriteResponse = 676;
constexpr std::uint32_t kAttributeValue = 13;
constexpr std::uint8_t kMaskValue = 0x01;
constexpr std::uint8_t kMaskValueAndSourceTime = 0x05;
constexpr std::int32_t kNullString = -1;
constexpr int kMaxItems = 10000;

// Fixed bytes before the item array, transport header through array count.
constexpr std::int64_t kWriteRequestFixed = 65;  // 24 + 4 + 29 + 4 + 4
constexpr std::int64_t kReadRequestFixed = 77;   // 24 + 4 + 29 + 4 + 8 + 4 + 4
constexpr std::int64_t kResponseFixed = 64;      // 24 + 4 + 24 + 4 + 4 + 4
constexpr std::int64_t kWriteItemBytes = 18;
constexpr std::int64_t kReadItemBytes = 54;
constexpr std::int64_t kReadResultBytes = 14;
constexpr std::int64_t kWriteResultBytes = 4;
constexpr std::int64_t kResponsePadding = 68;

std::int64_t tcp_overhead() { return 40 + 26; }

std::int64_t request_padding(frame::MessageName name, std::int64_t fixed,
                             std::int64_t per_item, int n) {
    const std::int64_t above_tcp = frame::message_size(name, n) - tcp_overhead();
    const std::int64_t pad = above_tcp - fixed - per_item * n;
    if (pad < 0) {
        throw LimitExceededError("calibration cannot fit this item count");
    }
    return pad;
}

std::uint16_t type_code(OpcUaServiceMessage::Kind kind) {
    switch (kind) {
    case OpcUaServiceMessage::Kind::read_request: return kTypeReadRequest;
    case OpcUaServiceMessage::Kind::read_response: return kTypeReadResponse;
    case OpcUaServiceMessage::Kind::write_request: return kTypeWriteRequest;
    case OpcUaServiceMessage::Kind::write_response: return kTypeWriteResponse;
    }
    throw UnknownNameError("unknown service kind");
}

std::uint16_t parse_numeric_node_id(const std::string& id) {
    if (id.size() < 3 || id[0] != 'i' || id[1] != '=') {
        throw InvalidConfigError("write nodes use numeric ids of the form i=<number>: " + id);
    }
    unsigned value = 0;
    const char* begin = id.data() + 2;
    const char* end = id.data() + id.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || value == 0 || value > 0xFFFF) {
        throw InvalidConfigError("numeric node id out of range: " + id);
    }
    return static_cast<std::uint16_t>(value);
}

void write_transport_header(ByteWriter& w, const OpcUaServiceMessage& m) {
    w.u8('M');
    w.u8('S');
    w.u8('G');
    w.u8('F');
    w.u32le(0); // patched to the final size
    w.u32le(1); // secure channel id
    w.u32le(1); // token id
    w.u32le(m.request_id); // sequence number
    w.u32le(m.request_id);
}

void write_type_id(ByteWriter& w, OpcUaServiceMessage::Kind kind) {
    w.u8(0x01); // four byte node id
    w.u8(0x00); // namespace 0
    w.u16le(type_code(kind));
}

void write_request_header(ByteWriter& w, const OpcUaServiceMessage& m) {
    w.u8(0x00); // auth token: two byte node id 0
    w.u8(0x00);
    w.i64le(m.timestamp);
    w.u32le(m.request_handle);
    w.u32le(0);           // return diagnostics
    w.i32le(kNullString); // audit entry id
    w.u32le(0);           // timeout hint
    w.u8(0x00);           // additional header: null extension object
    w.u8(0x00);
    w.u8(0x00);
}

void write_response_header(ByteWriter& w, const OpcUaServiceMessage& m) {
    w.i64le(m.timestamp);
    w.u32le(m.request_handle);
    w.u32le(0);           // service result: good
    w.u8(0x00);           // no service diagnostics
    w.i32le(kNullString); // string table
    w.u8(0x00);           // additional header
    w.u8(0x00);
    w.u8(0x00);
}

void write_padding(ByteWriter& w, std::int64_t pad) {
    w.i32le(static_cast<std::int32_t>(pad));
    w.zeros(static_cast<size_t>(pad));
}

} // namespace

std::string write_node_id(int index) {
    if (index < 0) {
        throw InvalidConfigError("node index cannot be negative");
    }
    return "i=" + std::to_string(40001 + index);
}

std::string read_node_id(int index) {
    if (index < 0 || index > 99999) {
        throw InvalidConfigError("node index out of range");
    }
    char buf[kReadNodeIdLength + 1];
    std::snprintf(buf, sizeof buf, "PLCB.DB0001.REGISTER_BANK.V%06d", index);
    return std::string(buf, kReadNodeIdLength);
}

std::vector<std::uint8_t> encode(const OpcUaServiceMessage& m) {
    ByteWriter w;
    write_transport_header(w, m);
    write_type_id(w, m.kind);
    switch (m.kind) {
    case OpcUaServiceMessage::Kind::write_request: {
        const int n = static_cast<int>(m.node_ids.size());
        if (n < 1 || n > kMaxItems) {
            throw InvalidConfigError("write request needs 1 or more nodes");
        }
        if (m.values.size() != m.node_ids.size()) {
            throw InvalidConfigError("write request needs one value per node");
        }
        write_request_header(w, m);
        write_padding(w, request_padding(frame::MessageName::write_request,
                                         kWriteRequestFixed, kWriteItemBytes, n));
        w.i32le(n);
        for (int i = 0; i < n; ++i) {
            if (m.values[static_cast<size_t>(i)].source_timestamp != 0) {
                throw InvalidConfigError("write values carry no source timestamp");
            }
            w.u8(0x01); // four byte node id
            w.u8(0x01); // namespace 1
            w.u16le(parse_numeric_node_id(m.node_ids[static_cast<size_t>(i)]));
            w.u32le(kAttributeValue);
            w.i32le(kNullString); // index range
            w.u8(kMaskValue);
            w.u8(m.values[static_cast<size_t>(i)].type_tag);
            w.u32le(m.values[static_cast<size_t>(i)].value);
        }
        break;
    }
    case OpcUaServiceMessage::Kind::read_request: {
        const int n = static_cast<int>(m.node_ids.size());
        if (n < 1 || n > kMaxItems) {
            throw InvalidConfigError("read request needs 1 or more nodes");
        }
        if (!m.values.empty()) {
            throw InvalidConfigError("read request carries no values");
        }
        write_request_header(w, m);
        write_padding(w, request_padding(frame::MessageName::read_request,
                                         kReadRequestFixed, kReadItemBytes, n));
        w.u64le(0); // max age 0.0
        w.u32le(2); // return both timestamps
        w.i32le(n);
        for (const std::string& id : m.node_ids) {
            if (id.size() != kReadNodeIdLength) {
                throw LimitExceededError("read node ids are exactly " +
                                         std::to_string(kReadNodeIdLength) +
                                         " characters, got " + std::to_string(id.size()));
            }
            w.u8(0x03); // string node id
            w.u16le(1); // namespace 1
            w.i32le(static_cast<std::int32_t>(id.size()));
            w.raw({reinterpret_cast<const std::uint8_t*>(id.data()), id.size()});
            w.u32le(kAttributeValue);
            w.i32le(kNullString); // index range
            w.u16le(0);           // data encoding: null qualified name
            w.i32le(kNullString);
        }
        break;
    }
    case OpcUaServiceMessage::Kind::read_response: {
        const int n = static_cast<int>(m.values.size());
        if (n < 1 || n > kMaxItems) {
            throw InvalidConfigError("read response needs 1 or more values");
        }
        write_response_header(w, m);
        write_padding(w, kResponsePadding);
        w.i32le(n);
        for (const OpcUaValue& v : m.values) {
            w.u8(kMaskValueAndSourceTime);
            w.u8(v.type_tag);
            w.u32le(v.value);
            w.i64le(v.source_timestamp);
        }
        w.i32le(kNullString); // diagnostic infos
        break;
    }
    case OpcUaServiceMessage::Kind::write_response: {
        const int n = static_cast<int>(m.status_codes.size());
        if (n < 1 || n > kMaxItems) {
            throw InvalidConfigError("write response needs 1 or more status codes");
        }
        write_response_header(w, m);
        write_padding(w, kResponsePadding);
        w.i32le(n);
        for (std::uint32_t code : m.status_codes) {
            w.u32le(code);
        }
        w.i32le(kNullString); // diagnostic infos
        break;
    }
    }
    w.patch_u32le(4, static_cast<std::uint32_t>(w.size()));
    return w.take();
}

namespace {

void read_magic(ByteReader& r) {
    r.expect_u8('M', "transport magic");
    r.expect_u8('S', "transport magic");
    r.expect_u8('G', "transport magic");
    r.expect_u8('F', "transport magic");
}

void read_request_header(ByteReader& r, OpcUaServiceMessage& m) {
    r.expect_u8(0x00, "auth token");
    r.expect_u8(0x00, "auth token");
    m.timestamp = r.i64le();
    m.request_handle = r.u32le();
    if (r.u32le() != 0) {
        throw MalformedMessageError("opcua: unexpected diagnostics request");
    }
    if (r.i32le() != kNullString) {
        throw MalformedMessageError("opcua: audit entry id is not null");
    }
    if (r.u32le() != 0) {
        throw MalformedMessageError("opcua: unexpected timeout hint");
    }
    r.expect_u8(0x00, "additional header");
    r.expect_u8(0x00, "additional header");
    r.expect_u8(0x00, "additional header");
}

void read_response_header(ByteReader& r, OpcUaServiceMessage& m) {
    m.timestamp = r.i64le();
    m.request_handle = r.u32le();
    if (r.u32le() != 0) {
        throw MalformedMessageError("opcua: service result is not good");
    }
    r.expect_u8(0x00, "service diagnostics");
    if (r.i32le() != kNullString) {
        throw MalformedMessageError("opcua: string table is not null");
    }
    r.expect_u8(0x00, "additional header");
    r.expect_u8(0x00, "additional header");
    r.expect_u8(0x00, "additional header");
}

void read_padding(ByteReader& r) {
    const std::int32_t pad = r.i32le();
    if (pad < 0) {
        throw MalformedMessageError("opcua: negative padding length");
    }
    r.skip_zeros(static_cast<size_t>(pad));
}

std::int32_t read_count(ByteReader& r) {
    const std::int32_t count = r.i32le();
    if (count < 1 || count > kMaxItems) {
        throw MalformedMessageError("opcua: implausible array count " +
                                    std::to_string(count));
    }
    return count;
}

} // namespace

OpcUaServiceMessage decode_opcua(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes, "opcua");
    read_magic(r);
    const std::uint32_t declared = r.u32le();
    if (declared != bytes.size()) {
        throw MalformedMessageError("opcua: declared size " + std::to_string(declared) +
                                    " does not match " + std::to_string(bytes.size()) +
                                    " received bytes");
    }
    if (r.u32le() != 1 || r.u32le() != 1) {
        throw MalformedMessageError("opcua: unexpected channel or token id");
    }
    OpcUaServiceMessage m;
    m.request_id = r.u32le();
    if (r.u32le() != m.request_id) {
        throw MalformedMessageError("opcua: sequence and request id disagree");
    }
    r.expect_u8(0x01, "type id encoding");
    r.expect_u8(0x00, "type id namespace");
    const std::uint16_t type = r.u16le();
    switch (type) {
    case kTypeWriteRequest: {
        m.kind = OpcUaServiceMessage::Kind::write_request;
        read_request_header(r, m);
        read_padding(r);
        const std::int32_t n = read_count(r);
        for (std::int32_t i = 0; i < n; ++i) {
            r.expect_u8(0x01, "node id encoding");
            r.expect_u8(0x01, "node namespace");
            m.node_ids.push_back("i=" + std::to_string(r.u16le()));
            if (r.u32le() != kAttributeValue) {
                throw MalformedMessageError("opcua: write item attribute is not value");
            }
            if (r.i32le() != kNullString) {
                throw MalformedMessageError("opcua: write item index range is not null");
            }
            r.expect_u8(kMaskValue, "data value mask");
            OpcUaValue v;
            v.type_tag = r.u8();
            v.value = r.u32le();
            m.values.push_back(v);
        }
        break;
    }
    case kTypeReadRequest: {
        m.kind = OpcUaServiceMessage::Kind::read_request;
        read_request_header(r, m);
        read_padding(r);
        if (r.u64le() != 0) {
            throw MalformedMessageError("opcua: max age is not zero");
        }
        if (r.u32le() != 2) {
            throw MalformedMessageError("opcua: timestamps selector is off");
        }
        const std::int32_t n = read_count(r);
        for (std::int32_t i = 0; i < n; ++i) {
            r.expect_u8(0x03, "node id encoding");
            if (r.u16le() != 1) {
                throw MalformedMessageError("opcua: read node namespace is off");
            }
            const std::int32_t len = r.i32le();
            if (len != static_cast<std::int32_t>(kReadNodeIdLength)) {
                throw MalformedMessageError("opcua: read node id length is off");
            }
            std::vector<std::uint8_t> raw = r.raw(static_cast<size_t>(len));
            m.node_ids.emplace_back(raw.begin(), raw.end());
            if (r.u32le() != kAttributeValue) {
                throw MalformedMessageError("opcua: read item attribute is not value");
            }
            if (r.i32le() != kNullString) {
                throw MalformedMessageError("opcua: read item index range is not null");
            }
            if (r.u16le() != 0 || r.i32le() != kNullString) {
                throw MalformedMessageError("opcua: data encoding is not null");
            }
        }
        break;
    }
    case kTypeReadResponse: {
        m.kind = OpcUaServiceMessage::Kind::read_response;
        read_response_header(r, m);
        read_padding(r);
        const std::int32_t n = read_count(r);
        for (std::int32_t i = 0; i < n; ++i) {
            r.expect_u8(kMaskValueAndSourceTime, "data value mask");
            OpcUaValue v;
            v.type_tag = r.u8();
            v.value = r.u32le();
            v.source_timestamp = r.i64le();
            m.values.push_back(v);
        }
        if (r.i32le() != kNullString) {
            throw MalformedMessageError("opcua: diagnostic infos are not null");
        }
        break;
    }
    case kTypeWriteResponse: {
        m.kind = OpcUaServiceMessage::Kind::write_response;
        read_response_header(r, m);
        read_padding(r);
        const std::int32_t n = read_count(r);
        for (std::int32_t i = 0; i < n; ++i) {
            m.status_codes.push_back(r.u32le());
        }
        if (r.i32le() != kNullString) {
            throw MalformedMessageError("opcua: diagnostic infos are not null");
        }
        break;
    }
    default:
        throw MalformedMessageError("opcua: unknown service type " + std::to_string(type));
    }
    r.expect_end();
    return m;
}

size_t opcua_frame_length(std::span<const std::uint8_t> prefix) {
    if (prefix.size() < 8 || prefix[0] != 'M' || prefix[1] != 'S' || prefix[2] != 'G') {
        return 0;
    }
    return static_cast<size_t>(prefix[4]) | static_cast<size_t>(prefix[5]) << 8 |
           static_cast<size_t>(prefix[6]) << 16 | static_cast<size_t>(prefix[7]) << 24;
}

} // namespace wire
} // namespace plcbench
