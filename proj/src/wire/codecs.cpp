#include "plcbench/errors.hpp"
#include "plcbench/wire/codecs.hpp"

namespace plcbench {
namespace wire {

std::vector<std::uint8_t> encode(const WireMessage& m) {
    return std::visit([](const auto& inner) { return encode(inner); }, m);
}

WireMessage decode(std::span<const std::uint8_t> bytes, Interface iface, ByteOrder order) {
    switch (iface) {
    case Interface::ouc_udp:
    case Interface::ouc_tcp:
        return decode_ouc(bytes, order);
    case Interface::s7:
        return decode_s7(bytes);
    case Interface::opcua_write:
    case Interface::opcua_read: {
        OpcUaServiceMessage m = decode_opcua(bytes);
        const bool is_write = m.kind == OpcUaServiceMessage::Kind::write_request ||
                              m.kind == OpcUaServiceMessage::Kind::write_response;
        if (is_write != (iface == Interface::opcua_write)) {
            throw MalformedMessageError("opcua: service does not belong to the " +
                                        std::string(to_string(iface)) + " interface");
        }
        return m;
    }
    case Interface::uadp:
        return decode_uadp(bytes);
    }
    throw UnknownNameError("unknown interface");
}

std::int64_t wire_frame_bytes(Interface iface, size_t payload_len) {
    const auto len = static_cast<std::int64_t>(payload_len);
    switch (iface) {
    case Interface::ouc_udp:
    case Interface::uadp:
        return frame::ethernet_frame_size(len + 8 + 20, frame::HeaderStack::udp());
    case Interface::ouc_tcp:
        // A one-way stream: every data segment is acknowledged separately.
        return frame::ethernet_frame_size(len + 20 + 20, frame::HeaderStack::tcp()) +
               frame::kTcpAckBytes;
    case Interface::s7:
    case Interface::opcua_write:
    case Interface::opcua_read:
        // Request/response traffic acknowledges piggybacked; no extra frame.
        return frame::ethernet_frame_size(len + 20 + 20, frame::HeaderStack::tcp());
    }
    throw UnknownNameError("unknown interface");
}

namespace {

// k shares of total, as equal as possible, larger shares first.
std::vector<std::uint32_t> balanced_shares(std::uint32_t total, std::uint32_t k) {
    std::vector<std::uint32_t> shares(k, total / k);
    for (std::uint32_t i = 0; i < total % k; ++i) {
        ++shares[i];
    }
    return shares;
}

} // namespace

std::vector<S7Message> split_for_pdu(const S7ReadSpec& spec, const PlcProfile& profile) {
    if (spec.value_count < 1) {
        throw InvalidConfigError("a poll covers at least one value");
    }
    const int k = profile.split_count(spec.value_count);
    const std::vector<std::uint32_t> shares =
        balanced_shares(static_cast<std::uint32_t>(spec.value_count),
                        static_cast<std::uint32_t>(k));
    std::vector<S7Message> jobs;
    jobs.reserve(shares.size());
    std::uint32_t offset = spec.start_offset;
    std::uint16_t pdu_ref = spec.first_pdu_ref;
    for (std::uint32_t share : shares) {
        S7Message job;
        job.kind = S7Message::Kind::job;
        job.pdu_ref = pdu_ref++;
        job.item.db_number = spec.db_number;
        job.item.start_offset = offset;
        job.item.byte_count = static_cast<std::uint16_t>(share * 4);
        jobs.push_back(job);
        offset += share * 4;
    }
    return jobs;
}

std::vector<S7Message> handle_s7_read(const S7Message& job, const PlcProfile& profile,
                                      const DataView& data) {
    if (job.kind != S7Message::Kind::job) {
        throw InvalidConfigError("only jobs can be handled");
    }
    if (!profile.supports(Interface::s7)) {
        throw UnsupportedInterfaceError(std::string(to_string(profile.model())) +
                                        " does not support s7");
    }
    std::vector<std::uint8_t> bytes;
    try {
        bytes = data.read_bytes(job.item.db_number, job.item.start_offset,
                                job.item.byte_count);
    } catch (const AddressRangeError&) {
        S7Message err;
        err.kind = S7Message::Kind::ack_data;
        err.pdu_ref = job.pdu_ref;
        err.return_code = kS7ReturnAddressError;
        return {err};
    }
    // The device answers an oversized item in capacity-sized slices, spread
    // as evenly as possible.
    const std::uint32_t cap = static_cast<std::uint32_t>(profile.max_values_per_job()) * 4;
    const std::uint32_t total = job.item.byte_count;
    const std::uint32_t k = (total + cap - 1) / cap;
    const std::vector<std::uint32_t> shares = balanced_shares(total, k);
    std::vector<S7Message> acks;
    acks.reserve(k);
    size_t offset = 0;
    for (std::uint32_t share : shares) {
        S7Message ack;
        ack.kind = S7Message::Kind::ack_data;
        ack.pdu_ref = job.pdu_ref;
        ack.return_code = kS7ReturnOk;
        ack.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                        bytes.begin() + static_cast<std::ptrdiff_t>(offset + share));
        acks.push_back(std::move(ack));
        offset += share;
    }
    return acks;
}

} // namespace wire
} // namespace plcbench
