#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "plcbench/wire/bytes.hpp"

namespace plcbench {
namespace wire {

// Raw value block pushed over open user communication, UDP or TCP alike.
// The receiver must know the layout; nothing on the wire describes it.
struct OucPayload {
    std::vector<std::uint32_t> values;
    ByteOrder order = ByteOrder::big_endian;

    bool operator==(const OucPayload&) const = default;
};

enum class S7Area : std::uint8_t {
    data_block = 0x84,
};

struct S7Item {
    S7Area area = S7Area::data_block;
    std::uint16_t db_number = 1;
    std::uint32_t start_offset = 0; // bytes from block start
    std::uint16_t byte_count = 4;

    bool operator==(const S7Item&) const = default;
};

// Classic S7 read: a Job asks for one item, the Ack_Data answers with the
// bytes (or an item-level error code).
struct S7Message {
    enum class Kind { job, ack_data };

    Kind kind = Kind::job;
    std::uint16_t pdu_ref = 0;
    S7Item item;                      // job only
    std::uint8_t error_class = 0;     // ack header
    std::uint8_t error_code = 0;      // ack header
    std::uint8_t return_code = 0xFF;  // ack item: 0xFF ok, 0x05 address error
    std::vector<std::uint8_t> data;   // ack item payload

    bool operator==(const S7Message&) const = default;
};

inline constexpr std::uint8_t kS7ReturnOk = 0xFF;
inline constexpr std::uint8_t kS7ReturnAddressError = 0x05;

// A typed value as carried by the OPC UA services. Write requests carry no
// source timestamp on the wire; read responses always do.
struct OpcUaValue {
    std::uint8_t type_tag = 7; // UInt32
    std::uint32_t value = 0;
    std::int64_t source_timestamp = 0;

    bool operator==(const OpcUaValue&) const = default;
};

struct OpcUaServiceMessage {
    enum class Kind { read_request, read_response, write_request, write_response };

    Kind kind = Kind::read_request;
    std::uint32_t request_id = 1;     // secure channel sequence number
    std::uint32_t request_handle = 1;
    std::int64_t timestamp = 0;       // request/response header timestamp
    std::vector<std::string> node_ids;     // read_request (string ids),
                                           // write_request (numeric "i=..." ids)
    std::vector<OpcUaValue> values;        // write_request, read_response
    std::vector<std::uint32_t> status_codes; // write_response

    bool operator==(const OpcUaServiceMessage&) const = default;
};

// Canonical node id generators. Written nodes use numeric ids registered on
// the server; read nodes use browse-style string ids of fixed width, which is
// what keeps the read request calibration exact.
std::string write_node_id(int index);          // "i=40001", "i=40002", ...
std::string read_node_id(int index);           // 33 character string id
inline constexpr size_t kReadNodeIdLength = 33;

struct UadpField {
    std::uint8_t type_tag = 7; // UInt32
    std::uint32_t value = 0;

    bool operator==(const UadpField&) const = default;
};

struct UadpDataSetMessage {
    std::uint16_t writer_id = 1;
    std::vector<UadpField> fields;

    bool operator==(const UadpDataSetMessage&) const = default;
};

struct UadpNetworkMessage {
    std::uint16_t publisher_id = 1;
    std::uint16_t writer_group_id = 1;
    std::uint16_t group_version = 0;
    std::vector<UadpDataSetMessage> writers;

    bool operator==(const UadpNetworkMessage&) const = default;
};

using WireMessage =
    std::variant<OucPayload, S7Message, OpcUaServiceMessage, UadpNetworkMessage>;

} // namespace wire
} // namespace plcbench
