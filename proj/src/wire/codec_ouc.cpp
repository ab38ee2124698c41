#include "plcbench/errors.hpp"
#include "plcbench/wire/codecs.hpp"

namespace plcbench {
namespace wire {

std::vector<std::uint8_t> encode(const OucPayload& m) {
    if (m.values.empty()) {
        throw InvalidConfigError("an OUC block carries at least one value");
    }
    ByteWriter w;
    for (std::uint32_t v : m.values) {
        w.u32(v, m.order);
    }
    return w.take();
}

OucPayload decode_ouc(std::span<const std::uint8_t> bytes, ByteOrder order) {
    ByteReader r(bytes, "ouc");
    if (bytes.empty() || bytes.size() % 4 != 0) {
        throw MalformedMessageError("ouc: payload must be a nonzero multiple of 4 bytes, got " +
                                    std::to_string(bytes.size()));
    }
    OucPayload m;
    m.order = order;
    m.values.reserve(bytes.size() / 4);
    while (r.remaining() > 0) {
        m.values.push_back(r.u32(order));
    }
    return m;
}

} // namespace wire
} // namespace plcbench
