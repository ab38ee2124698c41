#include "plcbench/errors.hpp"
#include "plcbench/wire/codecs.hpp"

namespace plcbench {
namespace wire {

// Telegram layout, big-endian throughout:
//   TPKT      4 bytes   03 00 <len>, length covers the whole telegram
//   COTP      3 bytes   02 F0 80, data transfer with end-of-data flag
//   header   10 or 12   protocol 32, kind, reserved, pdu ref, lengths
//                        (acks add error class and code)
//   parameter function 04 (read var) and item count, plus the one item on jobs
//   data      acks only: return code, transport, bit length, payload
//   trailer  72 zero bytes of vendor padding, kept inside the TPKT envelope

namespace {

constexpr std::uint8_t kTpktVersion = 0x03;
constexpr std::uint8_t kCotpLength = 0x02;
constexpr std::uint8_t kCotpDataTransfer = 0xF0;
constexpr std::uint8_t kCotpEndOfData = 0x80;
constexpr std::uint8_t kS7Protocol = 0x32;
constexpr std::uint8_t kRoscJob = 0x01;
constexpr std::uint8_t kRoscAckData = 0x03;
constexpr std::uint8_t kFunctionReadVar = 0x04;
constexpr std::uint8_t kItemSpec = 0x12;
constexpr std::uint8_t kItemSpecLength = 0x0A;
constexpr std::uint8_t kSyntaxS7Any = 0x10;
constexpr std::uint8_t kTransportByte = 0x02;
constexpr std::uint8_t kTransportBit = 0x04;
constexpr size_t kTrailerZeros = 72;
constexpr std::uint32_t kMaxBitAddress = 0xFFFFFF;

} // namespace

std::vector<std::uint8_t> encode(const S7Message& m) {
    ByteWriter w;
    w.u8(kTpktVersion);
    w.u8(0x00);
    const size_t len_offset = w.size();
    w.u16be(0); // patched below
    w.u8(kCotpLength);
    w.u8(kCotpDataTransfer);
    w.u8(kCotpEndOfData);
    if (m.kind == S7Message::Kind::job) {
        if (m.item.byte_count == 0) {
            throw InvalidConfigError("a job must request at least one byte");
        }
        const std::uint64_t bit_address =
            static_cast<std::uint64_t>(m.item.start_offset) * 8;
        if (bit_address > kMaxBitAddress) {
            throw LimitExceededError("start offset does not fit the 24 bit address field");
        }
        w.u8(kS7Protocol);
        w.u8(kRoscJob);
        w.u16be(0); // reserved
        w.u16be(m.pdu_ref);
        w.u16be(14); // parameter length
        w.u16be(0);  // data length
        w.u8(kFunctionReadVar);
        w.u8(0x01); // item count
        w.u8(kItemSpec);
        w.u8(kItemSpecLength);
        w.u8(kSyntaxS7Any);
        w.u8(kTransportByte);
        w.u16be(m.item.byte_count);
        w.u16be(m.item.db_number);
        w.u8(static_cast<std::uint8_t>(m.item.area));
        w.u24be(static_cast<std::uint32_t>(bit_address));
    } else {
        if (m.return_code == kS7ReturnOk && m.data.empty()) {
            throw InvalidConfigError("a successful ack carries data");
        }
        if (m.return_code != kS7ReturnOk && !m.data.empty()) {
            throw InvalidConfigError("an error ack carries no data");
        }
        if (m.data.size() > 0x1FFF) {
            throw LimitExceededError("ack payload does not fit the bit length field");
        }
        w.u8(kS7Protocol);
        w.u8(kRoscAckData);
        w.u16be(0); // reserved
        w.u16be(m.pdu_ref);
        w.u16be(2); // parameter length
        w.u16be(static_cast<std::uint16_t>(4 + m.data.size()));
        w.u8(m.error_class);
        w.u8(m.error_code);
        w.u8(kFunctionReadVar);
        w.u8(0x01); // item count
        w.u8(m.return_code);
        w.u8(m.data.empty() ? 0x00 : kTransportBit);
        w.u16be(static_cast<std::uint16_t>(m.data.size() * 8));
        w.raw(m.data);
    }
    w.zeros(kTrailerZeros);
    w.patch_u16be(len_offset, static_cast<std::uint16_t>(w.size()));
    return w.take();
}

S7Message decode_s7(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes, "s7");
    r.expect_u8(kTpktVersion, "tpkt version");
    r.expect_u8(0x00, "tpkt reserved");
    const std::uint16_t tpkt_len = r.u16be();
    if (tpkt_len != bytes.size()) {
        throw MalformedMessageError("s7: tpkt length " + std::to_string(tpkt_len) +
                                    " does not match " + std::to_string(bytes.size()) +
                                    " received bytes");
    }
    r.expect_u8(kCotpLength, "cotp length");
    r.expect_u8(kCotpDataTransfer, "cotp pdu type");
    r.expect_u8(kCotpEndOfData, "cotp eot flag");
    r.expect_u8(kS7Protocol, "protocol id");
    const std::uint8_t rosc = r.u8();
    S7Message m;
    if (rosc == kRoscJob) {
        m.kind = S7Message::Kind::job;
        if (r.u16be() != 0) {
            throw MalformedMessageError("s7: reserved field is nonzero");
        }
        m.pdu_ref = r.u16be();
        const std::uint16_t param_len = r.u16be();
        const std::uint16_t data_len = r.u16be();
        if (param_len != 14 || data_len != 0) {
            throw MalformedMessageError("s7: job section lengths are off");
        }
        r.expect_u8(kFunctionReadVar, "function");
        r.expect_u8(0x01, "item count");
        r.expect_u8(kItemSpec, "item spec id");
        r.expect_u8(kItemSpecLength, "item spec length");
        r.expect_u8(kSyntaxS7Any, "addressing syntax");
        r.expect_u8(kTransportByte, "item transport");
        m.item.byte_count = r.u16be();
        m.item.db_number = r.u16be();
        m.item.area = static_cast<S7Area>(r.u8());
        const std::uint32_t bit_address = r.u24be();
        if (bit_address % 8 != 0) {
            throw MalformedMessageError("s7: bit address is not byte aligned");
        }
        m.item.start_offset = bit_address / 8;
        if (m.item.byte_count == 0) {
            throw MalformedMessageError("s7: job requests zero bytes");
        }
    } else if (rosc == kRoscAckData) {
        m.kind = S7Message::Kind::ack_data;
        if (r.u16be() != 0) {
            throw MalformedMessageError("s7: reserved field is nonzero");
        }
        m.pdu_ref = r.u16be();
        const std::uint16_t param_len = r.u16be();
        const std::uint16_t data_len = r.u16be();
        m.error_class = r.u8();
        m.error_code = r.u8();
        if (param_len != 2 || data_len < 4) {
            throw MalformedMessageError("s7: ack section lengths are off");
        }
        r.expect_u8(kFunctionReadVar, "function");
        r.expect_u8(0x01, "item count");
        m.return_code = r.u8();
        const std::uint8_t transport = r.u8();
        const std::uint16_t bit_length = r.u16be();
        if (bit_length % 8 != 0) {
            throw MalformedMessageError("s7: data bit length is not byte aligned");
        }
        const size_t payload_len = bit_length / 8;
        if (payload_len != static_cast<size_t>(data_len) - 4) {
            throw MalformedMessageError("s7: data length fields disagree");
        }
        if (m.return_code == kS7ReturnOk) {
            if (transport != kTransportBit || payload_len == 0) {
                throw MalformedMessageError("s7: successful ack without data");
            }
        } else if (transport != 0x00 || payload_len != 0) {
            throw MalformedMessageError("s7: error ack carries data");
        }
        m.data = r.raw(payload_len);
    } else {
        throw MalformedMessageError("s7: unknown message kind " + std::to_string(rosc));
    }
    r.skip_zeros(kTrailerZeros);
    r.expect_end();
    return m;
}

size_t s7_frame_length(std::span<const std::uint8_t> prefix) {
    if (prefix.size() < 4 || prefix[0] != kTpktVersion) {
        return 0;
    }
    return static_cast<size_t>(prefix[2]) << 8 | prefix[3];
}

} // namespace wire
} // namespace plcbench
