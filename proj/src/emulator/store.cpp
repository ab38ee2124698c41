#include "plcbench/emulator/store.hpp"

#include <mutex>

#include "plcbench/errors.hpp"

namespace plcbench {
namespace emu {

DataBlockStore::DataBlockStore(const std::map<std::uint16_t, std::uint32_t>& block_sizes) {
    if (block_sizes.empty()) {
        throw InvalidConfigError("a store needs at least one data block");
    }
    for (const auto& [db, size] : block_sizes) {
        if (size == 0 || size > (1u << 24)) {
            throw InvalidConfigError("data block " + std::to_string(db) +
                                     " size is out of range");
        }
        std::vector<std::uint8_t> bytes(size);
        for (std::uint32_t i = 0; i < size; ++i) {
            bytes[i] = static_cast<std::uint8_t>(i);
        }
        blocks_.emplace(db, std::move(bytes));
    }
}

const std::vector<std::uint8_t>& DataBlockStore::block(std::uint16_t db) const {
    auto it = blocks_.find(db);
    if (it == blocks_.end()) {
        throw AddressRangeError("data block " + std::to_string(db) + " does not exist");
    }
    return it->second;
}

std::vector<std::uint8_t> DataBlockStore::read_bytes(std::uint16_t db, std::uint32_t start,
                                                     std::uint32_t count) const {
    std::shared_lock lock(mutex_);
    const auto& bytes = block(db);
    if (count == 0 || start > bytes.size() || count > bytes.size() - start) {
        throw AddressRangeError("read of " + std::to_string(count) + " bytes at " +
                                std::to_string(start) + " leaves data block " +
                                std::to_string(db) + " (" + std::to_string(bytes.size()) +
                                " bytes)");
    }
    return {bytes.begin() + start, bytes.begin() + start + count};
}

void DataBlockStore::write_bytes(std::uint16_t db, std::uint32_t start,
                                 std::span<const std::uint8_t> data) {
    std::unique_lock lock(mutex_);
    auto it = blocks_.find(db);
    if (it == blocks_.end()) {
        throw AddressRangeError("data block " + std::to_string(db) + " does not exist");
    }
    auto& bytes = it->second;
    if (data.empty() || start > bytes.size() || data.size() > bytes.size() - start) {
        throw AddressRangeError("write of " + std::to_string(data.size()) + " bytes at " +
                                std::to_string(start) + " leaves data block " +
                                std::to_string(db));
    }
    std::copy(data.begin(), data.end(), bytes.begin() + start);
}

std::vector<std::uint32_t> DataBlockStore::read_values(std::uint16_t db, std::uint32_t start,
                                                       int n, wire::ByteOrder order) const {
    if (n < 1) {
        throw InvalidConfigError("value count must be at least 1");
    }
    const std::vector<std::uint8_t> bytes =
        read_bytes(db, start, static_cast<std::uint32_t>(n) * 4);
    std::vector<std::uint32_t> values(static_cast<size_t>(n));
    wire::ByteReader r(bytes, "store");
    for (auto& v : values) {
        v = r.u32(order);
    }
    return values;
}

void DataBlockStore::write_values(std::uint16_t db, std::uint32_t start,
                                  const std::vector<std::uint32_t>& values,
                                  wire::ByteOrder order) {
    if (values.empty()) {
        throw InvalidConfigError("value count must be at least 1");
    }
    wire::ByteWriter w;
    for (std::uint32_t v : values) {
        w.u32(v, order);
    }
    write_bytes(db, start, w.bytes());
}

std::uint32_t DataBlockStore::block_size(std::uint16_t db) const {
    std::shared_lock lock(mutex_);
    return static_cast<std::uint32_t>(block(db).size());
}

} // namespace emu
} // namespace plcbench
