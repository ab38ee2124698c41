#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plcbench/frame_model.hpp"
#include "plcbench/profiles.hpp"
#include "plcbench/wire/messages.hpp"

namespace plcbench {
namespace wire {

// Encoders produce the transport payload (above UDP or TCP); they do not
// prepend IP or Ethernet framing. Sizes are calibrated so that
// wire_frame_bytes(interface, encoded.size()) equals the frame model's
// message_size for the same shape, acknowledge included.

std::vector<std::uint8_t> encode(const OucPayload& m);
std::vector<std::uint8_t> encode(const S7Message& m);
std::vector<std::uint8_t> encode(const OpcUaServiceMessage& m);
std::vector<std::uint8_t> encode(const UadpNetworkMessage& m);
std::vector<std::uint8_t> encode(const WireMessage& m);

// Interface-specific decoders. OUC payloads carry no framing at all, so the
// receiver's configured byte order and value count discipline apply.
OucPayload decode_ouc(std::span<const std::uint8_t> bytes,
                      ByteOrder order = ByteOrder::big_endian);
S7Message decode_s7(std::span<const std::uint8_t> bytes);
OpcUaServiceMessage decode_opcua(std::span<const std::uint8_t> bytes);
UadpNetworkMessage decode_uadp(std::span<const std::uint8_t> bytes);

// Dispatch by interface; OUC interfaces use `order`.
WireMessage decode(std::span<const std::uint8_t> bytes, Interface iface,
                   ByteOrder order = ByteOrder::big_endian);

// Transport + IP + Ethernet bytes around one encoded payload, acknowledge
// included on TCP-based interfaces, Ethernet padding floor applied.
std::int64_t wire_frame_bytes(Interface iface, size_t payload_len);

// Plan of one S7 poll: which jobs to send for n contiguous 4 byte values.
// Splits when the device's job capacity requires it; values are spread as
// evenly as possible with the larger shares first.
struct S7ReadSpec {
    std::uint16_t db_number = 1;
    std::uint32_t start_offset = 0;
    int value_count = 1;
    std::uint16_t first_pdu_ref = 1;
};

std::vector<S7Message> split_for_pdu(const S7ReadSpec& spec, const PlcProfile& profile);

// Pure request handler: answers a Job from block storage semantics. Splits
// oversized jobs the way the device would, one Ack_Data per slice. Returns a
// single address-error ack when the item does not fit the block.
class DataView {
public:
    virtual ~DataView() = default;
    // Must return exactly `count` bytes or throw AddressRangeError.
    virtual std::vector<std::uint8_t> read_bytes(std::uint16_t db, std::uint32_t start,
                                                 std::uint32_t count) const = 0;
};

std::vector<S7Message> handle_s7_read(const S7Message& job, const PlcProfile& profile,
                                      const DataView& data);

// Frame length helpers for stream transports: how many more bytes the header
// says the full message has. Both return 0 when the prefix is too short.
size_t s7_frame_length(std::span<const std::uint8_t> prefix);    // from TPKT
size_t opcua_frame_length(std::span<const std::uint8_t> prefix); // from UATCP

} // namespace wire
} // namespace plcbench
