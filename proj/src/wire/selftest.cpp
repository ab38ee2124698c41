#include "plcbench/wire/selftest.hpp"

#include <sstream>

#include "plcbench/errors.hpp"
#include "plcbench/frame_model.hpp"

namespace plcbench {
namespace wire {

namespace {

int rand_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::uint32_t rand_u32(std::mt19937_64& rng) {
    return static_cast<std::uint32_t>(rng());
}

std::uint16_t rand_u16(std::mt19937_64& rng) {
    return static_cast<std::uint16_t>(rng());
}

std::uint8_t rand_u8(std::mt19937_64& rng) {
    return static_cast<std::uint8_t>(rng());
}

} // namespace

OucPayload random_ouc(std::mt19937_64& rng) {
    OucPayload m;
    m.order = rng() % 2 == 0 ? ByteOrder::big_endian : ByteOrder::little_endian;
    const int count = rand_int(rng, 1, 100);
    m.values.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        m.values.push_back(rand_u32(rng));
    }
    return m;
}

S7Message random_s7(std::mt19937_64& rng) {
    S7Message m;
    m.pdu_ref = rand_u16(rng);
    if (rng() % 2 == 0) {
        m.kind = S7Message::Kind::job;
        m.item.db_number = rand_u16(rng);
        // The 24 bit bit-address field caps the byte offset.
        m.item.start_offset = static_cast<std::uint32_t>(rng() % 0x200000);
        m.item.byte_count = static_cast<std::uint16_t>(rand_int(rng, 1, 400));
        return m;
    }
    m.kind = S7Message::Kind::ack_data;
    if (rng() % 8 == 0) {
        m.return_code = kS7ReturnAddressError;
        m.error_class = rand_u8(rng);
        m.error_code = rand_u8(rng);
        return m;
    }
    m.return_code = kS7ReturnOk;
    m.error_class = 0;
    m.error_code = 0;
    const int bytes = rand_int(rng, 1, 400);
    m.data.reserve(static_cast<size_t>(bytes));
    for (int i = 0; i < bytes; ++i) {
        m.data.push_back(rand_u8(rng));
    }
    return m;
}

OpcUaServiceMessage random_opcua(std::mt19937_64& rng) {
    OpcUaServiceMessage m;
    m.request_id = 1 + static_cast<std::uint32_t>(rng() % 1000000);
    m.request_handle = rand_u32(rng);
    m.timestamp = static_cast<std::int64_t>(rng());
    const int count = rand_int(rng, 1, 100);
    switch (rng() % 4) {
    case 0: {
        m.kind = OpcUaServiceMessage::Kind::write_request;
        for (int i = 0; i < count; ++i) {
            m.node_ids.push_back(write_node_id(rand_int(rng, 0, 999)));
            OpcUaValue v;
            v.type_tag = rand_u8(rng);
            v.value = rand_u32(rng);
            v.source_timestamp = 0; // not carried by write items
            m.values.push_back(v);
        }
        break;
    }
    case 1: {
        m.kind = OpcUaServiceMessage::Kind::write_response;
        for (int i = 0; i < count; ++i) {
            m.status_codes.push_back(rand_u32(rng));
        }
        break;
    }
    case 2: {
        m.kind = OpcUaServiceMessage::Kind::read_request;
        for (int i = 0; i < count; ++i) {
            m.node_ids.push_back(read_node_id(rand_int(rng, 0, 99999)));
        }
        break;
    }
    default: {
        m.kind = OpcUaServiceMessage::Kind::read_response;
        for (int i = 0; i < count; ++i) {
            OpcUaValue v;
            v.type_tag = rand_u8(rng);
            v.value = rand_u32(rng);
            v.source_timestamp = static_cast<std::int64_t>(rng());
            m.values.push_back(v);
        }
        break;
    }
    }
    return m;
}

UadpNetworkMessage random_uadp(std::mt19937_64& rng) {
    UadpNetworkMessage m;
    m.publisher_id = rand_u16(rng);
    m.writer_group_id = rand_u16(rng);
    m.group_version = rand_u16(rng);
    const int writers = rand_int(rng, 1, 2);
    for (int w = 0; w < writers; ++w) {
        UadpDataSetMessage dsm;
        dsm.writer_id = rand_u16(rng);
        const int fields = rand_int(rng, 1, 10);
        for (int f = 0; f < fields; ++f) {
            UadpField field;
            field.type_tag = rand_u8(rng);
            field.value = rand_u32(rng);
            dsm.fields.push_back(field);
        }
        m.writers.push_back(std::move(dsm));
    }
    return m;
}

namespace {

template <typename Message, typename Generator, typename Decoder>
SelftestResult roundtrip_check(const std::string& name, int trials, std::uint64_t seed,
                               Generator gen, Decoder dec) {
    SelftestResult result;
    result.check = name;
    result.cases = trials;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Message original = gen(rng);
        try {
            const std::vector<std::uint8_t> bytes = encode(original);
            const Message back = dec(bytes, original);
            if (!(back == original)) {
                result.ok = false;
                result.detail = "trial " + std::to_string(t) + ": decode disagrees";
                return result;
            }
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = "trial " + std::to_string(t) + ": " + e.what();
            return result;
        }
    }
    return result;
}

// One encoded instance per (message shape, n); its full frame size must be
// the frame model's published number.
SelftestResult size_conformance() {
    SelftestResult result;
    result.check = "size-conformance";
    std::mt19937_64 rng(7);
    auto expect = [&result](frame::MessageName name, Interface iface, size_t encoded,
                            int n) {
        ++result.cases;
        if (!result.ok) {
            return;
        }
        const std::int64_t framed = wire_frame_bytes(iface, encoded);
        const std::int64_t model = frame::message_size(name, n);
        if (framed != model) {
            std::ostringstream detail;
            detail << frame::to_string(name) << " n=" << n << ": framed " << framed
                   << " != model " << model;
            result.ok = false;
            result.detail = detail.str();
        }
    };
    try {
        for (int n = 1; n <= 100; ++n) {
            OucPayload ouc;
            for (int i = 0; i < n; ++i) {
                ouc.values.push_back(rand_u32(rng));
            }
            const size_t ouc_len = encode(ouc).size();
            expect(frame::MessageName::udp_data, Interface::ouc_udp, ouc_len, n);
            expect(frame::MessageName::tcp_data, Interface::ouc_tcp, ouc_len, n);

            S7Message job;
            job.kind = S7Message::Kind::job;
            job.pdu_ref = static_cast<std::uint16_t>(n);
            job.item.byte_count = static_cast<std::uint16_t>(4 * n);
            expect(frame::MessageName::job, Interface::s7, encode(job).size(), n);

            S7Message ack;
            ack.kind = S7Message::Kind::ack_data;
            ack.data.assign(static_cast<size_t>(4 * n), 0xAB);
            expect(frame::MessageName::ack_data, Interface::s7, encode(ack).size(), n);

            OpcUaServiceMessage write_req;
            write_req.kind = OpcUaServiceMessage::Kind::write_request;
            OpcUaServiceMessage write_resp;
            write_resp.kind = OpcUaServiceMessage::Kind::write_response;
            OpcUaServiceMessage read_req;
            read_req.kind = OpcUaServiceMessage::Kind::read_request;
            OpcUaServiceMessage read_resp;
            read_resp.kind = OpcUaServiceMessage::Kind::read_response;
            for (int i = 0; i < n; ++i) {
                write_req.node_ids.push_back(write_node_id(i));
                OpcUaValue v;
                v.value = rand_u32(rng);
                write_req.values.push_back(v);
                write_resp.status_codes.push_back(0);
                read_req.node_ids.push_back(read_node_id(i));
                OpcUaValue rv;
                rv.value = rand_u32(rng);
                rv.source_timestamp = 1;
                read_resp.values.push_back(rv);
            }
            expect(frame::MessageName::write_request, Interface::opcua_write,
                   encode(write_req).size(), n);
            expect(frame::MessageName::write_response, Interface::opcua_write,
                   encode(write_resp).size(), n);
            expect(frame::MessageName::read_request, Interface::opcua_read,
                   encode(read_req).size(), n);
            expect(frame::MessageName::read_response, Interface::opcua_read,
                   encode(read_resp).size(), n);

            if (n <= 10) {
                UadpNetworkMessage uadp;
                UadpDataSetMessage dsm;
                for (int i = 0; i < n; ++i) {
                    UadpField f;
                    f.value = rand_u32(rng);
                    dsm.fields.push_back(f);
                }
                uadp.writers.push_back(std::move(dsm));
                expect(frame::MessageName::dataset_message, Interface::uadp,
                       encode(uadp).size(), n);
            }
        }
    } catch (const std::exception& e) {
        result.ok = false;
        result.detail = e.what();
    }
    return result;
}

} // namespace

std::vector<SelftestResult> roundtrip_selftest(int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw InvalidConfigError("selftest needs at least one trial");
    }
    std::vector<SelftestResult> results;
    results.push_back(roundtrip_check<OucPayload>(
        "ouc", trials, seed ^ 0x01, random_ouc,
        [](const std::vector<std::uint8_t>& bytes, const OucPayload& original) {
            return decode_ouc(bytes, original.order);
        }));
    results.push_back(roundtrip_check<S7Message>(
        "s7", trials, seed ^ 0x02, random_s7,
        [](const std::vector<std::uint8_t>& bytes, const S7Message&) {
            return decode_s7(bytes);
        }));
    results.push_back(roundtrip_check<OpcUaServiceMessage>(
        "opcua", trials, seed ^ 0x03, random_opcua,
        [](const std::vector<std::uint8_t>& bytes, const OpcUaServiceMessage&) {
            return decode_opcua(bytes);
        }));
    results.push_back(roundtrip_check<UadpNetworkMessage>(
        "uadp", trials, seed ^ 0x04, random_uadp,
        [](const std::vector<std::uint8_t>& bytes, const UadpNetworkMessage&) {
            return decode_uadp(bytes);
        }));
    results.push_back(size_conformance());
    return results;
}

bool all_ok(const std::vector<SelftestResult>& results) {
    for (const SelftestResult& r : results) {
        if (!r.ok) {
            return false;
        }
    }
    return true;
}

} // namespace wire
} // namespace plcbench
