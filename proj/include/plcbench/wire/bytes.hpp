#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plcbench {
namespace wire {

enum class ByteOrder {
    big_endian,
    little_endian,
};

std::string to_string(ByteOrder o);
ByteOrder byte_order_from_string(std::string_view name); // throws UnknownNameError

class ByteWriter {
public:
    const std::vector<std::uint8_t>& bytes() const { return buf_; }
    std::vector<std::uint8_t> take() { return std::move(buf_); }
    size_t size() const { return buf_.size(); }

    void u8(std::uint8_t v);
    void u16be(std::uint16_t v);
    void u16le(std::uint16_t v);
    void u24be(std::uint32_t v);
    void u32be(std::uint32_t v);
    void u32le(std::uint32_t v);
    void i32le(std::int32_t v);
    void u64le(std::uint64_t v);
    void i64le(std::int64_t v);
    void u32(std::uint32_t v, ByteOrder o);
    void raw(std::span<const std::uint8_t> data);
    void zeros(size_t count);
    // Overwrites previously written bytes, for length fields patched late.
    void patch_u16be(size_t offset, std::uint16_t v);
    void patch_u32le(size_t offset, std::uint32_t v);

private:
    std::vector<std::uint8_t> buf_;
};

// Bounds-checked sequential reader; every overrun throws
// MalformedMessageError with the given context in the message.
class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> data, std::string context);

    size_t remaining() const { return data_.size() - pos_; }
    size_t position() const { return pos_; }

    std::uint8_t u8();
    std::uint16_t u16be();
    std::uint16_t u16le();
    std::uint32_t u24be();
    std::uint32_t u32be();
    std::uint32_t u32le();
    std::int32_t i32le();
    std::uint64_t u64le();
    std::int64_t i64le();
    std::uint32_t u32(ByteOrder o);
    std::vector<std::uint8_t> raw(size_t count);
    void skip_zeros(size_t count); // throws when any byte is nonzero
    void expect_u8(std::uint8_t v, const char* what);
    void expect_end(); // throws when trailing bytes remain

private:
    [[noreturn]] void fail(const std::string& detail) const;
    void need(size_t count) const;

    std::span<const std::uint8_t> data_;
    size_t pos_ = 0;
    std::string context_;
};

} // namespace wire
} // namespace plcbench
