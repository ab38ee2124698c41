#include "plcbench/errors.hpp"
#include "plcbench/wire/codecs.hpp"

namespace plcbench {
namespace wire {

// Periodic publisher datagram, little-endian:
//   network header  9 bytes  version and flags, publisher id, writer group
//                            id, group version, message count, reserved
//   per writer      5 bytes  writer id, flags, field count
//   per field       5 bytes  type tag and 4 byte value
// The layout caps match the devices: 10 fields per dataset, 2 writers per
// group. Counts beyond that do not exist on the wire and are rejected.

namespace {

constexpr std::uint8_t kVersionFlags = 0x71; // version 1, group header + payload
constexpr std::uint8_t kDataSetFlags = 0x01; // valid, raw field encoding
constexpr int kMaxFieldsPerDataSet = 10;
constexpr int kMaxWritersPerGroup = 2;

} // namespace

std::vector<std::uint8_t> encode(const UadpNetworkMessage& m) {
    if (m.writers.empty() || static_cast<int>(m.writers.size()) > kMaxWritersPerGroup) {
        throw LimitExceededError("a writer group carries 1 to " +
                                 std::to_string(kMaxWritersPerGroup) + " writers, got " +
                                 std::to_string(m.writers.size()));
    }
    ByteWriter w;
    w.u8(kVersionFlags);
    w.u16le(m.publisher_id);
    w.u16le(m.writer_group_id);
    w.u16le(m.group_version);
    w.u8(static_cast<std::uint8_t>(m.writers.size()));
    w.u8(0x00); // reserved
    for (const UadpDataSetMessage& dsm : m.writers) {
        if (dsm.fields.empty() || static_cast<int>(dsm.fields.size()) > kMaxFieldsPerDataSet) {
            throw LimitExceededError("a dataset carries 1 to " +
                                     std::to_string(kMaxFieldsPerDataSet) + " fields, got " +
                                     std::to_string(dsm.fields.size()));
        }
        w.u16le(dsm.writer_id);
        w.u8(kDataSetFlags);
        w.u16le(static_cast<std::uint16_t>(dsm.fields.size()));
        for (const UadpField& f : dsm.fields) {
            w.u8(f.type_tag);
            w.u32le(f.value);
        }
    }
    return w.take();
}

UadpNetworkMessage decode_uadp(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes, "uadp");
    r.expect_u8(kVersionFlags, "version flags");
    UadpNetworkMessage m;
    m.publisher_id = r.u16le();
    m.writer_group_id = r.u16le();
    m.group_version = r.u16le();
    const std::uint8_t count = r.u8();
    r.expect_u8(0x00, "reserved byte");
    if (count < 1 || count > kMaxWritersPerGroup) {
        throw MalformedMessageError("uadp: writer count " + std::to_string(count) +
                                    " is outside the layout");
    }
    for (std::uint8_t i = 0; i < count; ++i) {
        UadpDataSetMessage dsm;
        dsm.writer_id = r.u16le();
        r.expect_u8(kDataSetFlags, "dataset flags");
        const std::uint16_t fields = r.u16le();
        if (fields < 1 || fields > kMaxFieldsPerDataSet) {
            throw MalformedMessageError("uadp: field count " + std::to_string(fields) +
                                        " is outside the layout");
        }
        for (std::uint16_t k = 0; k < fields; ++k) {
            UadpField f;
            f.type_tag = r.u8();
            f.value = r.u32le();
            dsm.fields.push_back(f);
        }
        m.writers.push_back(std::move(dsm));
    }
    r.expect_end();
    return m;
}

} // namespace wire
} // namespace plcbench
