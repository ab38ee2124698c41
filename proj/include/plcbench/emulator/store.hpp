#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <vector>

#include "plcbench/wire/codecs.hpp"

namespace plcbench {
namespace emu {

// Process image: numbered data blocks of bytes, initialized with a ramp so
// every address has a predictable value. Reads and writes are atomic with
// respect to each other.
class DataBlockStore : public wire::DataView {
public:
    explicit DataBlockStore(const std::map<std::uint16_t, std::uint32_t>& block_sizes);

    std::vector<std::uint8_t> read_bytes(std::uint16_t db, std::uint32_t start,
                                         std::uint32_t count) const override;
    void write_bytes(std::uint16_t db, std::uint32_t start,
                     std::span<const std::uint8_t> data);

    // n consecutive 4 byte values starting at `start`, interpreted in the
    // given byte order.
    std::vector<std::uint32_t> read_values(std::uint16_t db, std::uint32_t start, int n,
                                           wire::ByteOrder order) const;
    void write_values(std::uint16_t db, std::uint32_t start,
                      const std::vector<std::uint32_t>& values, wire::ByteOrder order);

    std::uint32_t block_size(std::uint16_t db) const; // throws AddressRangeError

    std::uint64_t cycle() const { return cycle_.load(std::memory_order_relaxed); }
    void advance_cycle() { cycle_.fetch_add(1, std::memory_order_relaxed); }

private:
    const std::vector<std::uint8_t>& block(std::uint16_t db) const;

    std::map<std::uint16_t, std::vector<std::uint8_t>> blocks_;
    mutable std::shared_mutex mutex_;
    std::atomic<std::uint64_t> cycle_{0};
};

} // namespace emu
} // namespace plcbench
